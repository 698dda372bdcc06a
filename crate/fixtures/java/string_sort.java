import java.util.ArrayList;
import java.util.Collections;
import java.util.List;
import java.util.Scanner;

public class Main {
  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = Integer.parseInt(sc.nextLine().trim());
    List<String> words = new ArrayList<String>();
    for (int i = 0; i < n; i++) {
      words.add(sc.nextLine());
    }
    Collections.sort(words);
    for (String w : words) {
      System.out.println(w);
    }
  }
}
