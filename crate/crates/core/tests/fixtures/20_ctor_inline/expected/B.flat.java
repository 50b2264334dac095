class B {
    public B() {
        x = 5;
    }
    // pulled from A
    private int x;
    // pulled from A
    public int getX() {
        return x;
    }
}
