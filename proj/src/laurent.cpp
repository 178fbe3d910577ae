#include "skein/laurent.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "skein/errors.hpp"

namespace skein {

std::string rat_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

Rational rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(n, d);
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) c_[0] = c;
}

LaurentPoly LaurentPoly::monomial(int exp, const Rational& c) {
  LaurentPoly p;
  if (c != 0) p.c_[exp] = c;
  return p;
}

LaurentPoly LaurentPoly::loop_value() {
  LaurentPoly p;
  p.c_[2] = -1;
  p.c_[-2] = -1;
  return p;
}

LaurentPoly LaurentPoly::h() {
  LaurentPoly p;
  p.c_[1] = 1;
  p.c_[0] = 1;
  return p;
}

Rational LaurentPoly::coeff(int exp) const {
  auto it = c_.find(exp);
  return it == c_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set_coeff(int exp, const Rational& c) {
  if (c == 0)
    c_.erase(exp);
  else
    c_[exp] = c;
}

void LaurentPoly::trim() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second == 0)
      it = c_.erase(it);
    else
      ++it;
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto& [e, c] : o.c_) c_[e] += c;
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto& [e, c] : o.c_) c_[e] -= c;
  trim();
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto& [e1, x1] : c_)
    for (auto& [e2, x2] : o.c_) r.c_[e1 + e2] += x1 * x2;
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& x) const {
  LaurentPoly r;
  if (x == 0) return r;
  r = *this;
  for (auto& [e, c] : r.c_) c *= x;
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r{Rational(1)};
  LaurentPoly base = *this;
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// (h-1)^e truncated to degree k in h, where e may be negative;
// (h-1)^{-1} = -(1 + h + h^2 + ...).
static std::vector<Rational> hm1_pow(int e, int k) {
  std::vector<Rational> r(k + 1, Rational(0));
  r[0] = 1;
  auto mul = [&](const std::vector<Rational>& f) {
    std::vector<Rational> out(k + 1, Rational(0));
    for (int i = 0; i <= k; i++)
      for (int j = 0; i + j <= k; j++) out[i + j] += r[i] * f[j];
    r = out;
  };
  std::vector<Rational> base(k + 1, Rational(0));
  if (e >= 0) {
    base[0] = -1;
    if (k >= 1) base[1] = 1;
  } else {
    for (int i = 0; i <= k; i++) base[i] = -1;
  }
  for (int i = 0, n = std::abs(e); i < n; i++) mul(base);
  return r;
}

std::vector<Rational> LaurentPoly::jet_minus1(int k) const {
  std::vector<Rational> out(k + 1, Rational(0));
  for (auto& [e, c] : c_) {
    auto p = hm1_pow(e, k);
    for (int i = 0; i <= k; i++) out[i] += c * p[i];
  }
  return out;
}

Rational LaurentPoly::eval_minus1() const {
  Rational v = 0;
  for (auto& [e, c] : c_) v += ((e % 2 + 2) % 2 == 0) ? c : -c;
  return v;
}

std::optional<int> LaurentPoly::val_aplus1() const {
  if (c_.empty()) return std::nullopt;
  int span = c_.rbegin()->first - c_.begin()->first;
  auto jet = jet_minus1(span);
  for (int i = 0; i <= span; i++)
    if (jet[i] != 0) return i;
  // A nonzero Laurent polynomial has valuation at most its exponent span.
  throw std::logic_error("valuation beyond span");
}

LaurentPoly LaurentPoly::div_exact(const LaurentPoly& d) const {
  if (d.is_zero()) throw NotDivisible("division by zero");
  if (is_zero()) return LaurentPoly();
  // Shift both to ordinary polynomials and long-divide.
  int sn = c_.begin()->first, sd = d.c_.begin()->first;
  std::map<int, Rational> rem = c_;
  int dd = d.c_.rbegin()->first;  // top exponent of divisor
  Rational dlead = d.c_.rbegin()->second;
  std::map<int, Rational> q;
  while (!rem.empty()) {
    int top = rem.rbegin()->first;
    if (top - dd < sn - sd) throw NotDivisible("remainder in exact Laurent division");
    Rational f = rem.rbegin()->second / dlead;
    int sh = top - dd;
    q[sh] = f;
    for (auto& [e, c] : d.c_) {
      auto it = rem.find(e + sh);
      Rational nv = (it == rem.end() ? Rational(0) : it->second) - f * c;
      if (nv == 0) {
        if (it != rem.end()) rem.erase(it);
      } else {
        rem[e + sh] = nv;
      }
    }
  }
  LaurentPoly out;
  out.c_ = q;
  out.trim();
  return out;
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [e, c] : c_) j[std::to_string(e)] = rat_to_string(c);
  return j;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
  LaurentPoly p;
  for (auto it = j.begin(); it != j.end(); ++it)
    p.c_[std::stoi(it.key())] = rat_from_string(it.value().get<std::string>());
  p.trim();
  return p;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(it->second);
    if (it->first != 0) os << "*A^" << it->first;
  }
  return os.str();
}

}  // namespace skein
