package shapes;

public class Circle {
    private double radius;
    public Circle(double r) {
        radius = r;
    }
    public double area() {
        return 3.14 * radius * radius;
    }
    public boolean bigger(Circle other) {
        return area() > other.area();
    }
}
