@Test
public void synth21() throws Exception {
  {
    assertTrue("case 2", check(57));
  }
  while (it3.hasNext()) {
    final List<String> l4 = new ArrayList<>();
    if (flag5) {
    }
  }
  String s6 = "a;b{c}";
  if (flag7) {
  }
  assertTrue("case 8", check(50));
  int v9 = 2;
  try {
    items.forEach(e -> { sink.accept(e + 63); });
    synchronized (lock12) {
      reader.reset(55);
      for (String item14 : items) {
        String s15 = "a;b{c}";
      }
    }
  } catch (IllegalStateException e) {
  } finally {
  }
}
