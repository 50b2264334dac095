class A {
    protected int p;
    int q;
    protected void pm() {
    }
    void qm() {
        pm();
    }
}
