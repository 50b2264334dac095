class B {
    // pulled from A
    public static int count;
    // pulled from A
    public static void inc() {
        count = count + 1;
    }
}
