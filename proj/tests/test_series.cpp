#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "skein/algebra.hpp"
#include "skein/quotient.hpp"
#include "skein/series.hpp"

using namespace skein;

namespace {

Rational binom(int n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

SubsetCurve sc(std::initializer_list<int> l) { return SubsetCurve::of(l); }

SkeinElement curve_elem(std::initializer_list<int> l, int b) {
  return SkeinElement::monomial(Multicurve({SubsetCurve::of(l)}, b),
                                LaurentPoly(Rational(1)));
}

TruncElement negate(TruncElement t) {
  t.value = t.value.scaled(LaurentPoly(Rational(-1)));
  return t;
}

}  // namespace

TEST_CASE("squared arccosh series has the closed-form coefficients") {
  RationalSeries g = arccosh_sq_series(6);
  CHECK(g.at(0) == Rational(0));
  for (int k = 1; k <= 6; ++k) {
    Rational want = Rational(-2) / (Rational(k) * Rational(k) * binom(2 * k, k));
    CHECK(g.at(k) == want);
  }
  CHECK(g.at(1) == Rational(-1));
  CHECK(g.at(2) == Rational(-1, 12));
  CHECK(g.at(3) == Rational(-1, 90));
  CHECK(g.at(4) == Rational(-1, 560));
  CHECK(g.at(5) == Rational(-1, 3150));
}

TEST_CASE("prefactor series satisfies its defining identity exactly") {
  // (4 log(-A)) * prefactor = -A + A^{-1}; in h = A+1 the right side is
  // -2h - h^2 - h^3 - ... (geometric tail from A^{-1} = -1/(1-h)).
  const int K = 10;
  RationalSeries pref = prefactor_series(K);
  CHECK(pref.at(0) == Rational(1, 2));
  CHECK(pref.at(2) == Rational(1, 12));
  CHECK(pref.at(3) == Rational(1, 12));
  CHECK(pref.at(4) == Rational(29, 360));
  RationalSeries logna = log_neg_a_series(K);
  RationalSeries lhs = (logna * pref).scaled(Rational(4)).truncated(K);
  RationalSeries rhs;
  rhs.c.assign(K + 1, Rational(0));
  rhs.c[1] = Rational(-2);
  for (int k = 2; k <= K; ++k) rhs.c[k] = Rational(-1);
  for (int k = 0; k <= K; ++k) CHECK(lhs.at(k) == rhs.at(k));
}

TEST_CASE("central correction series has valuation two") {
  RationalSeries z = zeta_correction_series(8);
  CHECK(z.valuation() == 2);
  CHECK(z.at(2) == Rational(-2));
}

TEST_CASE("twist logarithm at the verification precision") {
  const int b = 3, N = 4;
  TruncElement l = L_of(sc({1, 2}), b, N);
  // At N = 4 only the (a, k) = (0, 1) term contributes to the curve part:
  // L = -1/2 (c + 2) plus unit corrections of F-degree >= 2.
  SkeinElement expect =
      (curve(sc({1, 2}), b) + SkeinElement::unit(b).scaled(LaurentPoly(Rational(2))))
          .scaled(LaurentPoly(Rational(-1, 2)));
  CHECK(nf2(l.value) == nf2(expect));
  // The logarithm is counit-free: eps of every L vanishes.
  CHECK(eps(l.value) == Rational(0));
  CHECK(eps(L_of(sc({1, 2}), b, N, LVariant::zeta).value) == Rational(0));
  // The central correction is invisible at this quotient (valuation 2 in h).
  CHECK(nf2(L_of(sc({1, 2}), b, N, LVariant::zeta).value) == nf2(l.value));
}

TEST_CASE("exponential of the twist derivation: trivial and inverse cases") {
  const int b = 3, N = 4;
  TruncElement l = L_of(sc({1, 2}), b, N);
  // A twist acts trivially on its own core curve and on disjoint curves.
  SkeinElement z1 = curve_elem({1, 2}, b);
  CHECK(nf2(exp_sigma(l, z1, N).value) == nf2(z1));
  SkeinElement z2 = curve_elem({3}, b);
  CHECK(nf2(exp_sigma(l, z2, N).value) == nf2(z2));
  // exp(sigma(-L)) inverts exp(sigma(L)).
  SkeinElement z3 = curve_elem({2, 3}, b);
  SkeinElement once = exp_sigma(l, z3, N).value;
  CHECK(nf2(exp_sigma(negate(l), once, N).value) == nf2(z3));
  CHECK(nf2(once) != nf2(z3));
}

TEST_CASE("truncated combination law") {
  const int b = 4, N = 4;
  TruncElement a = L_of(sc({1, 2}), b, N);
  TruncElement c = L_of(sc({2, 3}), b, N);
  TruncElement d = L_of(sc({3, 4}), b, N);
  CHECK(nf2(bch({a, negate(a)}, N).value).is_zero());
  CHECK(nf2(bch({TruncElement{SkeinElement::zero(b), N, ""}, a}, N).value) ==
        nf2(a.value));
  // Conjugation collapses to the exponential action.
  CHECK(nf2(bch({a, c, negate(a)}, N).value) ==
        nf2(exp_sigma(a, c.value, N).value));
  // Associativity of the truncated law.
  CHECK(nf2(bch({bch({a, c}, N), d}, N).value) ==
        nf2(bch({a, bch({c, d}, N)}, N).value));
}

TEST_CASE("twist verification: surgery against the exponential") {
  CHECK(dehn_verify(sc({1, 2}), curve_elem({2, 3}, 3)).equal);
  CHECK(dehn_verify(sc({1, 2}), curve_elem({1, 3}, 3)).equal);
  CHECK(dehn_verify(sc({1, 2}), curve_elem({3}, 3)).equal);
  CHECK(dehn_verify(sc({2, 3}), curve_elem({1, 2}, 4)).equal);
  CHECK(dehn_verify(sc({2, 3}), curve_elem({3, 4}, 4)).equal);
}

TEST_CASE("braid-group relations hold under the substitution") {
  for (const char* r : {"1", "2", "3", "4", "5", "6", "7"}) {
    ZetaReport rep = zeta_check(r, 4);
    CHECK(rep.equal);
  }
}

TEST_CASE("lantern relation vanishes") {
  ZetaReport rep = zeta_check("lantern", 3);
  CHECK(rep.equal);
  CHECK(rep.lhs.is_zero());
  nlohmann::json j = rep.to_json();
  CHECK(j["verdict"] == "equal");
}
