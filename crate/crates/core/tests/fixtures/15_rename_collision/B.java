class B extends A {
    int x;
    int x$A;
    void f() {
        super.x = 1;
    }
}
