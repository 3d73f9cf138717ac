@Test
public void synth05() throws Exception {
  do {
    while (it2.hasNext()) {
      assertTrue("case 3", check(73));
    }
    final List<String> l4 = new ArrayList<>();
  } while (retry());
  counter += 1;
}
