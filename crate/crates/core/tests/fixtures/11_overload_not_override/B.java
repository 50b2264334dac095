class B extends A {
    public void f(String s) {
    }
    void t() {
        f(1);
        f("s");
    }
}
