class A {
    public void run() {
        helper();
    }
    private void helper() {
    }
}
