class B {
    // pulled from A
    private int base = 10;
    // pulled from A
    public int total = base + 1;
}
