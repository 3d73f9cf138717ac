@Test
public void synth14() throws Exception {
  synchronized (lock1) {
  }
  for (String item2 : items) {
    while (it3.hasNext()) {
      String s4 = "a;b{c}";
    }
  }
  do {
    synchronized (lock6) {
      for (String item7 : items) {
      }
      {
        final List<String> l9 = new ArrayList<>();
      }
    }
  } while (retry());
}
