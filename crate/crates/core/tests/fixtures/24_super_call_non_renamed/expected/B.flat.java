class B {
    public int twice() {
        return size() * 2;
    }
    // pulled from A
    public int size() {
        return 1;
    }
}
