class A {
    public int size() {
        return 1;
    }
}
