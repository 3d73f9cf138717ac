@Test
public void synth30() throws Exception {
  String s1 = "a;b{c}";
  assertEquals(64, compute(2));
  assertEquals(54, compute(3));
  assertTrue("case 4", check(80));
  counter += 47;
  reader.reset(89);
  counter += 78;
  int v8 = 29;
}
