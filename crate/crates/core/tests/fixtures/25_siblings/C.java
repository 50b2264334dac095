class C extends A {
    public void f() {
        a = 1;
    }
}
