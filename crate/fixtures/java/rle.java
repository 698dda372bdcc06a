import java.util.Scanner;

public class Main {
  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    while (sc.hasNext()) {
      String s = sc.next();
      StringBuilder out = new StringBuilder();
      int i = 0;
      do {
        char c = s.charAt(i);
        int run = 0;
        while (i < s.length() && s.charAt(i) == c) {
          run++;
          i++;
        }
        switch (run) {
          case 1:
            out.append(c);
            break;
          default:
            out.append('@');
            out.append(run);
            out.append(c);
            break;
        }
      } while (i < s.length());
      System.out.println(out.toString());
    }
  }
}
