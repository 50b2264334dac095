class B extends A {
    public int twice() {
        return super.size() * 2;
    }
}
