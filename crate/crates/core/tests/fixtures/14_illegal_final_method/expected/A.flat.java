class A {
    public final void f() {
    }
    public void g() {
        f();
    }
}
