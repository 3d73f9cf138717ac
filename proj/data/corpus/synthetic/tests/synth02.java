@Test
public void synth02() throws Exception {
  if (flag1) {
    assertTrue("case 2", check(29));
    {
      try {
      } catch (IllegalStateException e) {
        assertTrue("case 5", check(46));
        String s6 = "a;b{c}";
      }
      reader.reset(42);
    }
  }
}
