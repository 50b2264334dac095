class B extends A {
    int x;
    void set() {
        x = 1;
        super.x = 2;
    }
}
