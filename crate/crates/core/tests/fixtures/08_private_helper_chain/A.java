class A {
    public void run() {
        step();
    }
    private void step() {
        inner();
    }
    private void inner() {
    }
}
