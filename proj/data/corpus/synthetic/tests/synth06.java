@Test
public void synth06() throws Exception {
  for (String item1 : items) {
    while (it2.hasNext()) {
      reader.reset(59);
    }
    do {
      int v5 = 82;
    } while (retry());
  }
}
