import java.util.Scanner;

public class Main {
  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int[] a = new int[n];
    for (int i = 0; i < n; i++) {
      a[i] = sc.nextInt();
    }
    int swaps = 0;
    boolean swapped = true;
    while (swapped) {
      swapped = false;
      for (int j = n - 1; j >= 1; j--) {
        if (a[j] < a[j - 1]) {
          int tmp = a[j];
          a[j] = a[j - 1];
          a[j - 1] = tmp;
          swapped = true;
          swaps++;
        }
      }
    }
    StringBuilder sb = new StringBuilder();
    for (int i = 0; i < n; i++) {
      if (i > 0) {
        sb.append(' ');
      }
      sb.append(a[i]);
    }
    System.out.println(sb.toString());
    System.out.println(swaps);
  }
}
