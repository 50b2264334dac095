class c2 {
    public int y;
    // pulled from c3
    protected int x;
    // pulled from c3
    public void g() {
        x = 1;
    }
}
