import java.util.Scanner;

public class Main {
  static long gcd(long a, long b) {
    return b == 0 ? a : gcd(b, a % b);
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    long x = sc.nextLong();
    long y = sc.nextLong();
    if (x < y) {
      long t = x;
      x = y;
      y = t;
    }
    System.out.println(gcd(x, y));
  }
}
