class B {
    public void f(String s) {
    }
    void t() {
        f(1);
        f("s");
    }
    // pulled from A
    public void f(int a) {
    }
}
