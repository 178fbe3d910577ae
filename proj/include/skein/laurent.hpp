#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skein/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace skein {

// Laurent polynomial in the quantum variable over the rationals.
// Internally a sparse exponent -> coefficient map with no zero entries.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);  // constant
  static LaurentPoly monomial(int exp, const Rational& c = Rational(1));
  static LaurentPoly A() { return monomial(1); }
  static LaurentPoly Ainv() { return monomial(-1); }
  // -A^2 - A^-2, the value of a trivial loop.
  static LaurentPoly loop_value();
  // A + 1
  static LaurentPoly h();

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rational>& coeffs() const { return c_; }
  Rational coeff(int exp) const;
  void set_coeff(int exp, const Rational& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly pow(unsigned n) const;
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }
  bool operator<(const LaurentPoly& o) const { return c_ < o.c_; }

  // Coefficients c_0..c_k of the expansion at A = -1 in powers of (A+1).
  std::vector<Rational> jet_minus1(int k) const;
  // (A+1)-adic valuation; nullopt means +infinity (the zero polynomial).
  std::optional<int> val_aplus1() const;
  // Exact division; throws NotDivisible when there is a remainder.
  LaurentPoly div_exact(const LaurentPoly& d) const;

  Rational eval_minus1() const;  // value at A = -1

  nlohmann::json to_json() const;
  static LaurentPoly from_json(const nlohmann::json& j);
  std::string str() const;

 private:
  std::map<int, Rational> c_;
  void trim();
};

inline LaurentPoly operator*(const Rational& c, const LaurentPoly& p) { return p.scaled(c); }

}  // namespace skein
