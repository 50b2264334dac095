class B extends A {
    public static int x;
}
