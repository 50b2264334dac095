class B extends A {
    private String name;
    B(String n) {
        name = n;
    }
}
