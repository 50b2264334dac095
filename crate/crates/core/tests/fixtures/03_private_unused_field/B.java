class B extends A {
    public void bump() {
        count = count + 1;
    }
}
