class c3 {
    protected int x;
    public void g() {
        x = 1;
    }
}
