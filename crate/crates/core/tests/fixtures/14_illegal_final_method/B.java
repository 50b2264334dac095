class B extends A {
    public void f() {
    }
}
