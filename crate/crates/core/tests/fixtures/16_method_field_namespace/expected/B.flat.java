class B {
    int f$A;
    public void f(int a) {
    }
    // pulled from A
    public void f$A$1(int a) {
    }
}
