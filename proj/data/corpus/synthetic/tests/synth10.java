@Test
public void synth10() throws Exception {
  for (int i1 = 0; i1 < 1; i1++) {
    reader.reset(36);
  }
  try {
    int v4 = 56;
    if (flag5) {
    }
  } catch (IllegalStateException e) {
    if (flag6) {
      if (flag7) {
      }
      assertEquals(6, compute(8));
      assertEquals(72, compute(9));
    } else {
      items.forEach(e -> { sink.accept(e + 6); });
    }
  }
}
