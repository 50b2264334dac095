class B {
    int n;
    // pulled from A
    public int n$A;
    // pulled from A
    public void inc(A other) {
        other.n = other.n + 1;
        n$A = n$A + 1;
    }
}
