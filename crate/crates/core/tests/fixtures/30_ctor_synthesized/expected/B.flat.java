class B {
    public int get() {
        return level;
    }
    B() {
        level = 1;
    }
    // pulled from A
    protected int level;
}
