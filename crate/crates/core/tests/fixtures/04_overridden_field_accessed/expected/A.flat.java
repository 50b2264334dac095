class A {
    protected int x;
    public int getX() {
        return x;
    }
}
