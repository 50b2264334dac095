class B extends A {
    int f$A;
    public void f(int a) {
    }
}
