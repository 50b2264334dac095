class B {
    public void f() {
        f$A();
    }
    // pulled from A
    public void f$A() {
    }
}
