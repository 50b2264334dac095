public class B {
    // pulled from A
    private int x;
    // pulled from A
    public int getX() {
        return x;
    }
    // pulled from A
    public void setX(int v) {
        x = v;
    }
}
