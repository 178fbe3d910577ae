#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "skein/errors.hpp"
#include "skein/laurent.hpp"

using namespace skein;

static LaurentPoly random_poly(std::mt19937& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> nterms(0, 5), expd(-6, 6), num(-9, 9), den(1, 4);
  LaurentPoly p;
  int n = nterms(rng);
  for (int i = 0; i < n; i++)
    p += LaurentPoly::monomial(expd(rng), Rational(num(rng), den(rng)));
  if (nonzero && p.is_zero()) p = LaurentPoly::monomial(expd(rng), Rational(1));
  return p;
}

TEST_CASE("ring axioms on random samples") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 200; i++) {
    auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + LaurentPoly() == p);
    CHECK(p * LaurentPoly(Rational(1)) == p);
    CHECK((p - p).is_zero());
  }
}

TEST_CASE("jet at -1 of the loop value") {
  // -A^2 - A^-2 has value -2 and first derivative coefficient 0 at A = -1.
  auto jet = LaurentPoly::loop_value().jet_minus1(1);
  CHECK(jet[0] == Rational(-2));
  CHECK(jet[1] == Rational(0));
}

TEST_CASE("jet reconstruction modulo (A+1)^(k+1)") {
  std::mt19937 rng(777);
  auto h = LaurentPoly::h();
  for (int i = 0; i < 100; i++) {
    auto p = random_poly(rng);
    int k = 3;
    auto jet = p.jet_minus1(k);
    LaurentPoly recon;
    for (int j = 0; j <= k; j++) recon += h.pow(j).scaled(jet[j]);
    auto diff = p - recon;
    auto v = diff.val_aplus1();
    CHECK((!v.has_value() || *v >= k + 1));
  }
}

TEST_CASE("valuation additivity and h powers") {
  std::mt19937 rng(424242);
  auto h = LaurentPoly::h();
  for (int i = 0; i < 100; i++) {
    auto p = random_poly(rng, true), q = random_poly(rng, true);
    auto vp = p.val_aplus1(), vq = q.val_aplus1();
    REQUIRE(vp.has_value());
    REQUIRE(vq.has_value());
    CHECK(*(p * q).val_aplus1() == *vp + *vq);
    CHECK(*(p * h.pow(3)).val_aplus1() == *vp + 3);
  }
  CHECK(!LaurentPoly().val_aplus1().has_value());
  CHECK(*LaurentPoly(Rational(5)).val_aplus1() == 0);
}

TEST_CASE("exact division round trip and failure") {
  std::mt19937 rng(999);
  for (int i = 0; i < 100; i++) {
    auto p = random_poly(rng), q = random_poly(rng, true);
    auto prod = p * q;
    CHECK(prod.div_exact(q) == p);
  }
  // (A+1) does not divide A
  CHECK_THROWS_AS(LaurentPoly::A().div_exact(LaurentPoly::h()), NotDivisible);
  // but divides A^2 - 1
  auto p = LaurentPoly::monomial(2) - LaurentPoly(Rational(1));
  CHECK(p.div_exact(LaurentPoly::h()) == LaurentPoly::A() - LaurentPoly(Rational(1)));
}

TEST_CASE("json round trip") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 50; i++) {
    auto p = random_poly(rng);
    auto j = p.to_json();
    CHECK(LaurentPoly::from_json(j) == p);
  }
  auto j = LaurentPoly::loop_value().to_json();
  CHECK(j["2"] == "-1/1");
  CHECK(j["-2"] == "-1/1");
}

TEST_CASE("rational string form") {
  CHECK(rat_to_string(Rational(-3, 6)) == "-1/2");
  CHECK(rat_from_string("7/2") == Rational(7, 2));
  CHECK(rat_from_string("-4") == Rational(-4));
}
