class A {
    protected int level;
    A() {
        level = 1;
    }
}
