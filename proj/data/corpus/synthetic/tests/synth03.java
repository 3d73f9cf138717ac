@Test
public void synth03() throws Exception {
  if (flag1) {
    do {
    } while (retry());
    int v3 = 30;
  } else {
    assertTrue("case 4", check(89));
    final List<String> l5 = new ArrayList<>();
  }
  while (it6.hasNext()) {
    final List<String> l7 = new ArrayList<>();
    items.forEach(e -> { sink.accept(e + 44); });
    assertTrue("case 9", check(6));
  }
  assertEquals(20, compute(10));
  assertTrue("case 11", check(23));
  int v12 = 94;
  int v13 = 90;
}
