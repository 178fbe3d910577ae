#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "skein/errors.hpp"
#include "skein/reduce.hpp"

using namespace skein;

namespace {

LaurentPoly mono(int c, int e) { return LaurentPoly::monomial(e, Rational(c)); }

// Golden two-strand torus link brackets: delta-normalized closed form
// A^{2n}(A^4 + 1 + A^{-4}) + A^{-6n}.
LaurentPoly torus_bracket(int n) {
  return mono(1, 2 * n) * (mono(1, 4) + mono(1, 0) + mono(1, -4)) + mono(1, -6 * n);
}

}  // namespace

TEST_CASE("crossing-free diagrams resolve to their multicurve") {
  for (auto comps : std::vector<std::vector<SubsetCurve>>{
           {},
           {SubsetCurve::of({1})},
           {SubsetCurve::of({1, 3}), SubsetCurve::of({2}), SubsetCurve::of({1, 2, 3})},
       }) {
    Multicurve m(comps, 3);
    SkeinElement e = resolve(realize(m, 3));
    CHECK(e == SkeinElement::monomial(m, LaurentPoly(Rational(1))));
  }
}

TEST_CASE("null loop resolves to the loop value") {
  Diagram d;
  d.b = 1;
  d.strands = {{{Rational(1, 5), Rational(1)},
                {Rational(2, 5), Rational(1)},
                {Rational(2, 5), Rational(2)},
                {Rational(1, 5), Rational(2)}}};
  SkeinElement e = resolve(d);
  SkeinElement want = SkeinElement::unit(1).scaled(LaurentPoly::loop_value());
  CHECK(e == want);
}

TEST_CASE("positive curl contributes -A^3") {
  Diagram d = realize(Multicurve({SubsetCurve::of({1})}, 1), 1);
  SkeinElement base = resolve(d);
  SkeinElement plus = resolve(insert_ray_twist(d, 1, +1));
  SkeinElement minus = resolve(insert_ray_twist(d, 1, -1));
  CHECK(plus == base.scaled(mono(-1, 3)));
  CHECK(minus == base.scaled(mono(-1, -3)));
  CHECK(writhe(insert_ray_twist(d, 1, +1)) == 1);
}

TEST_CASE("a cancelling finger move does not change the class") {
  Diagram d;
  d.b = 2;
  // Rectangle around puncture 1.
  d.strands.push_back({{Rational(3, 5), Rational(-3, 10)},
                       {Rational(7, 5), Rational(-3, 10)},
                       {Rational(7, 5), Rational(3, 10)},
                       {Rational(3, 5), Rational(3, 10)}});
  // Loop around puncture 2 with a finger poking through the right edge of the
  // first rectangle (two crossings, same strand over).
  d.strands.push_back({{Rational(8, 5), Rational(-1, 10)},
                       {Rational(6, 5), Rational(-1, 10)},
                       {Rational(6, 5), Rational(1, 10)},
                       {Rational(8, 5), Rational(1, 10)},
                       {Rational(8, 5), Rational(1, 2)},
                       {Rational(12, 5), Rational(1, 2)},
                       {Rational(12, 5), Rational(-1, 2)},
                       {Rational(8, 5), Rational(-1, 2)}});
  for (int overStrand : {0, 1}) {
    Diagram t = d;
    for (int j : {0, 2}) {
      Crossing c;
      c.p = {Rational(7, 5), Rational(j == 0 ? -1 : 1, 10)};
      if (overStrand == 1) {
        c.s_over = 1;
        c.seg_over = j;
        c.s_under = 0;
        c.seg_under = 1;
      } else {
        c.s_over = 0;
        c.seg_over = 1;
        c.s_under = 1;
        c.seg_under = j;
      }
      t.crossings.push_back(c);
    }
    validate_diagram(t);
    SkeinElement e = resolve(t);
    Multicurve want({SubsetCurve::of({1}), SubsetCurve::of({2})}, 2);
    CHECK(e == SkeinElement::monomial(want, LaurentPoly(Rational(1))));
  }
}

TEST_CASE("two-strand torus closures match the closed form") {
  for (int n = 0; n <= 3; ++n) {
    Diagram d = testhelpers::torus_two_closure(n, true);
    CHECK(bracket_disk(d) == torus_bracket(n));
  }
  // The mirrored diagram evaluates to the mirror image polynomial.
  Diagram m2 = testhelpers::torus_two_closure(2, false);
  LaurentPoly mirror = bracket_disk(m2);
  LaurentPoly expect = mono(1, -8) + mono(1, -4) + mono(1, 0) + mono(1, 12);
  CHECK(mirror == expect);
}

TEST_CASE("resolution is independent of the crossing list order") {
  Multicurve m1({SubsetCurve::of({1, 2})}, 3);
  Multicurve m2({SubsetCurve::of({2, 3})}, 3);
  Diagram d = stack(insert_ray_twist(realize(m1, 3), 1, +1), realize(m2, 3));
  SkeinElement ref = resolve(d);
  CHECK(!ref.terms.empty());
  std::mt19937 rng(12345);
  for (int it = 0; it < 5; ++it) {
    Diagram s = d;
    std::shuffle(s.crossings.begin(), s.crossings.end(), rng);
    CHECK(resolve(s) == ref);
  }
}

TEST_CASE("full twist on two parallel loops gives the expected classes") {
  // Two nested loops around puncture 1 with a full twist form a clasp whose
  // resolution lies in the span of 1 and the doubled curve.
  Multicurve m({SubsetCurve::of({1}), SubsetCurve::of({1})}, 1);
  Diagram t = insert_ray_twist(realize(m, 1), 1, +1);
  SkeinElement e = resolve(t);
  for (const auto& [k, v] : e.terms) {
    for (const auto& c : k.comps()) CHECK(c == SubsetCurve::of({1}));
    CHECK(k.comps().size() % 2 == 0);
  }
  // Resolving the same diagram with mirrored decorations must give the
  // A <-> 1/A image.
  Diagram tm = insert_ray_twist(realize(m, 1), 1, -1);
  SkeinElement em = resolve(tm);
  CHECK(e.terms.size() == em.terms.size());
}
