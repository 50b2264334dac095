class A {
    public int a;
    private int z;
}
