a.equals("abc")
