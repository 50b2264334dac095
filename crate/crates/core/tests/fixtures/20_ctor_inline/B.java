class B extends A {
    public B() {
        super(5);
    }
}
