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
    for (int i = 0; i < n; i++) {
      int min = i;
      for (int j = i; j < n; j++) {
        if (a[j] < a[min]) {
          min = j;
        }
      }
      if (min != i) {
        int t = a[i];
        a[i] = a[min];
        a[min] = t;
        swaps++;
      }
    }
    StringBuilder sb = new StringBuilder();
    for (int i = 0; i < n; i++) {
      sb.append(i == 0 ? "" : " ").append(a[i]);
    }
    System.out.println(sb);
    System.out.println(swaps);
  }
}
