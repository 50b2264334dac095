class A {
    public int n;
    public void inc(A other) {
        other.n = other.n + 1;
        n = n + 1;
    }
}
