import java.util.Scanner;

public class Main {
  static final long MOD = 1_000_000_007L;

  static long power(long base, long exp) {
    long result = 1L;
    base %= MOD;
    while (exp > 0) {
      if ((exp & 1) == 1) {
        result = result * base % MOD;
      }
      base = base * base % MOD;
      exp >>= 1;
    }
    return result;
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    long m = sc.nextLong();
    long n = sc.nextLong();
    System.out.println(power(m, n));
  }
}
