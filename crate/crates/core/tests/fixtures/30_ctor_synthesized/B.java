class B extends A {
    public int get() {
        return level;
    }
}
