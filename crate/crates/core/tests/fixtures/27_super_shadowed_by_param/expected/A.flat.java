class A {
    public int y;
}
