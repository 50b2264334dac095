class B {
    int x;
    // pulled from A
    public int x$A;
    // pulled from A
    public void g() {
        int x;
        x = 2;
    }
}
