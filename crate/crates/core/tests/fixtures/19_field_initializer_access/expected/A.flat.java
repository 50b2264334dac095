class A {
    private int base = 10;
    public int total = base + 1;
}
