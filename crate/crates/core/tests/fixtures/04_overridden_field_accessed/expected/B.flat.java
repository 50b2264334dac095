class B {
    int x;
    void set() {
        x = 1;
        x$A = 2;
    }
    // pulled from A
    protected int x$A;
    // pulled from A
    public int getX() {
        return x$A;
    }
}
