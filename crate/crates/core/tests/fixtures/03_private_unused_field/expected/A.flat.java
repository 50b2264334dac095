class A {
    private int unused;
    public int count;
}
