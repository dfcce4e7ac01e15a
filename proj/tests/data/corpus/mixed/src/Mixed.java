public class Mixed {
  // Same body as Counters.sum: dropped as a method-level duplicate.
  int total(int[] values) {
    int total = 0;
    for (int i = 0; i < values.length; i++) {
      total += values[i];
    }
    return total;
  }

  // Differs only in a local name: kept.
  int sumRenamed(int[] values) {
    int acc = 0;
    for (int i = 0; i < values.length; i++) {
      acc += values[i];
    }
    return acc;
  }

  String join(List<String> parts, String sep) {
    StringBuilder sb = new StringBuilder();
    for (int i = 0; i < parts.size(); i++) {
      if (i > 0) sb.append(sep);
      sb.append(parts.get(i));
    }
    return sb.toString();
  }

  void broken() {
    int = ;
  }
}
