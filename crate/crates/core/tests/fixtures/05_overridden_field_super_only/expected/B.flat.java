class B {
    public String x;
    void f() {
        x$A = 1;
    }
    // pulled from A
    public int x$A;
}
