package com.example.util;

import java.util.*;
import static java.lang.Math.max;

/* Boxed primitive constructor, the pattern from the warning kind. */
public final class Boxes<T> extends Base implements Serializable {
  private static final long serialVersionUID = 1L;

  public Integer box(int value) {
    Integer boxed = new Integer(value); // deprecated
    return Integer.valueOf(boxed.intValue() + max(1, 2));
  }
}
