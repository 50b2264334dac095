class B extends A {
    public void f() {
        super.f();
    }
}
