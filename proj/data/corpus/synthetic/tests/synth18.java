@Test
public void synth18() throws Exception {
  synchronized (lock1) {
    try {
      try {
        final List<String> l4 = new ArrayList<>();
        final List<String> l5 = new ArrayList<>();
      } catch (IllegalStateException e) {
      } finally {
        items.forEach(e -> { sink.accept(e + 3); });
        final List<String> l7 = new ArrayList<>();
      }
    } catch (IllegalStateException e) {
    } finally {
    }
  }
}
