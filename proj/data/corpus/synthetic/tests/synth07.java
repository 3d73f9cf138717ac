@Test
public void synth07() throws Exception {
  {
  }
  while (it2.hasNext()) {
    while (it3.hasNext()) {
    }
  }
  String s4 = "a;b{c}";
  items.forEach(e -> { sink.accept(e + 17); });
  assertEquals(94, compute(6));
}
