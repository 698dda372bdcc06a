import java.util.Scanner;

public class Main {
  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int[] a = new int[n];
    for (int i = 0; i < n; i++) {
      a[i] = sc.nextInt();
    }
    int q = sc.nextInt();
    int hits = 0;
    for (int i = 0; i < q; i++) {
      int key = sc.nextInt();
      int lo = 0, hi = n - 1;
      while (lo <= hi) {
        int mid = (lo + hi) / 2;
        if (a[mid] == key) {
          hits++;
          break;
        } else if (a[mid] < key) {
          lo = mid + 1;
        } else {
          hi = mid - 1;
        }
      }
    }
    System.out.println(hits);
  }
}
