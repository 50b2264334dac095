class c1 extends c2 {
    int x;
    void h() {
        super.g();
        super.x = 3;
    }
}
