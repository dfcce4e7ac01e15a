public class Counters {
  int x, y, z, v, w;

  void assignTwo() {
    y = 2;
    z = 3;
  }

  void nested() {
    if (z < 0) if (y > 1) w = 4;
    v = 10;
  }

  int sum(int[] values) {
    int total = 0;
    for (int i = 0; i < values.length; i++) {
      total += values[i];
    }
    return total;
  }

  int max(List<Integer> values) {
    int best = Integer.MIN_VALUE;
    for (Integer value : values) {
      if (value > best) best = value;
    }
    return best;
  }
}
