#pragma once
#include <string>
#include <vector>

#include "skein/algebra.hpp"
#include "skein/quotient.hpp"

#include <nlohmann/json_fwd.hpp>

namespace skein {

// A truncated power series with exact rational coefficients; c[k] is the
// coefficient of the k-th power of the formal variable.
struct RationalSeries {
  std::vector<Rational> c;

  Rational at(int k) const { return k < (int)c.size() ? c[k] : Rational(0); }
  RationalSeries truncated(int K) const;
  RationalSeries operator+(const RationalSeries& o) const;
  RationalSeries operator*(const RationalSeries& o) const;  // truncated to max size
  RationalSeries scaled(const Rational& r) const;
  // Smallest k with c[k] != 0, or -1 for the zero series.
  int valuation() const;
};

// Coefficients g_0..g_K of (arccosh(-c/2))^2 as a series in u = c+2,
// computed by formal composition; g_0 = 0 and g_k = -2/(k^2 binom(2k,k)).
RationalSeries arccosh_sq_series(int K);

// Coefficients of (-A+A^-1)/(4 log(-A)) as a series in h = A+1; the
// removable singularity at A = -1 cancels exactly and the constant term
// is 1/2.
RationalSeries prefactor_series(int K);

// log(-A) = -sum_{k>=1} h^k/k as a series in h = A+1.
RationalSeries log_neg_a_series(int K);

// The central correction -(-A+A^-1)log(-A) of the braid-group variant of L,
// as a series in h = A+1 (valuation 2, leading term -2h^2).
RationalSeries zeta_correction_series(int K);

// A skein element together with the filtration order of the discarded tail:
// terms of F-degree >= budget are understood as dropped.
struct TruncElement {
  SkeinElement value;
  int budget = 0;
  std::string provenance;
};

enum class LVariant { plain, zeta };

// The Dehn-twist logarithm L(c_s) truncated to F-degree < N: the sum of
// prefactor_a (A+1)^a g_k (c_s+2)^k over 2a+2k < N, with the central
// correction series added for the braid-group variant.
TruncElement L_of(const SubsetCurve& s, int b, int N, LVariant variant = LVariant::plain);

// exp(sigma(s)) applied to z: sum_{j<=2N-1} sigma(s)^j(z)/j!, with a
// stabilization check in the (ker eps)^2 quotient.  Throws
// StabilizationFailure if the partial sums do not stabilize.
TruncElement exp_sigma(const TruncElement& s, const SkeinElement& z, int N);

// Baker-Campbell-Hausdorff combination, folded left through the truncated
// law x + y + [x,y]/2 (double brackets lie in F^4, invisible at the
// verification precision).  Requires N <= 4.
TruncElement bch(const std::vector<TruncElement>& args, int N);

// Comparison report between the geometric Dehn twist (surgery on the
// realized diagram) and the algebraic exponential exp(sigma(L(c_s))),
// both reduced in the (ker eps)^2 quotient.
struct DehnReport {
  QuotClass2 geometric;
  QuotClass2 algebraic;
  bool equal = false;
  nlohmann::json to_json() const;
};
DehnReport dehn_verify(const SubsetCurve& s, const SkeinElement& z);

// Verification of one defining relation of the pure braid group under the
// twist-to-logarithm substitution, as the conjugation identity
// exp(sigma(e_1 L_1)) ... exp(sigma(e_k L_k))(L(c)) = L(c) at (ker eps)^2
// precision; the lantern relation is evaluated as bch(list) = 0.
struct ZetaReport {
  std::string relation;
  QuotClass2 lhs;
  QuotClass2 rhs;
  bool equal = false;
  nlohmann::json to_json() const;
};
// relation in {"1".."7"} (the seven presentation relations, instantiated on
// the smallest valid indices with b punctures) or "lantern" (b = 3).
ZetaReport zeta_check(const std::string& relation, int b);

}  // namespace skein
