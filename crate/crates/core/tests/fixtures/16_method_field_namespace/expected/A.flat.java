class A {
    public void f(int a) {
    }
}
