class B {
    void f(int y) {
        this.y = y;
    }
    // pulled from A
    public int y;
}
