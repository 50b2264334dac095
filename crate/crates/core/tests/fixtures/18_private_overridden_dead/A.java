class A {
    private int h;
    private void helper() {
    }
}
