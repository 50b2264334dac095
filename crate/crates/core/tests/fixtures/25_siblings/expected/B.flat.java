class B {
    // pulled from A
    public int a;
}
