#pragma once
#include "skein/geom.hpp"

namespace skein::testhelpers {

// Closure of a two-strand braid with 2n equal crossings (the (2,2n) torus
// link pattern) in the unpunctured disk.  `ascending_over` selects the
// handedness: whether the branch going up-right is the over branch.
inline Diagram torus_two_closure(int n, bool ascending_over) {
  Diagram d;
  d.b = 0;
  int m = 2 * n;
  std::vector<Vec2> A, B;
  for (int k = 0; k <= m; ++k) {
    A.push_back({Rational(k), Rational(k % 2 == 0 ? 1 : 2)});
    B.push_back({Rational(k), Rational(k % 2 == 0 ? 2 : 1)});
  }
  // Return arcs: A below, B above.
  A.push_back({Rational(m + 1), Rational(1)});
  A.push_back({Rational(m + 1), Rational(-1)});
  A.push_back({Rational(-1), Rational(-1)});
  A.push_back({Rational(-1), Rational(1)});
  B.push_back({Rational(m + 2), Rational(2)});
  B.push_back({Rational(m + 2), Rational(4)});
  B.push_back({Rational(-2), Rational(4)});
  B.push_back({Rational(-2), Rational(2)});
  d.strands = {A, B};
  for (int k = 0; k < m; ++k) {
    // At step k the strand sitting on the lower lane ascends.
    int ascStrand = (k % 2 == 0) ? 0 : 1;  // strand A starts on the lower lane
    Crossing c;
    c.p = {Rational(2 * k + 1, 2), Rational(3, 2)};
    if (ascending_over) {
      c.s_over = ascStrand;
      c.seg_over = k;
      c.s_under = 1 - ascStrand;
      c.seg_under = k;
    } else {
      c.s_over = 1 - ascStrand;
      c.seg_over = k;
      c.s_under = ascStrand;
      c.seg_under = k;
    }
    d.crossings.push_back(c);
  }
  validate_diagram(d);
  return d;
}

}  // namespace skein::testhelpers
