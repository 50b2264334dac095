class A {
    public static int count;
    public static void inc() {
        A.count = A.count + 1;
    }
}
