class B {
    private void helper() {
    }
    // pulled from A
    public void run() {
        helper$A();
    }
    // pulled from A
    private void helper$A() {
    }
}
