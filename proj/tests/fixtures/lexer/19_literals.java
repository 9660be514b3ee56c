Object o = null;
boolean yes = true, no = false;
String empty = "";
String unicode = "café ☃";
char tab = '\t';
