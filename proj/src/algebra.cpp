#include "skein/algebra.hpp"

#include <map>
#include <tuple>
#include <utility>

#include "skein/errors.hpp"
#include "skein/reduce.hpp"

namespace skein {

SkeinElement curve(const SubsetCurve& s, int b) {
  return SkeinElement::monomial(Multicurve({s}, b), LaurentPoly(Rational(1)));
}

SkeinElement curve(const Multicurve& m) {
  return SkeinElement::monomial(m, LaurentPoly(Rational(1)));
}

namespace {

const SkeinElement& mul_keys(const Multicurve& x, const Multicurve& y) {
  // Multicurve ordering compares components only, so the puncture count is
  // part of the cache key explicitly.
  static std::map<std::tuple<int, Multicurve, Multicurve>, SkeinElement> cache;
  auto key = std::make_tuple(x.b(), x, y);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SkeinElement r = resolve(stack(realize(x, x.b()), realize(y, y.b())));
  return cache.emplace(std::move(key), std::move(r)).first->second;
}

}  // namespace

SkeinElement mul(const SkeinElement& x, const SkeinElement& y) {
  if (x.b != y.b) throw InvariantViolation("product puncture count mismatch");
  SkeinElement out = SkeinElement::zero(x.b);
  for (const auto& [kx, cx] : x.terms) {
    for (const auto& [ky, cy] : y.terms) {
      LaurentPoly c = cx * cy;
      if (c.is_zero()) continue;
      out += mul_keys(kx, ky).scaled(c);
    }
  }
  out.prune();
  return out;
}

Rational eps(const SkeinElement& x) {
  Rational r(0);
  for (const auto& [k, v] : x.terms) {
    Rational f = v.eval_minus1();
    size_t n = k.comps().size();
    Rational m(1);
    for (size_t i = 0; i < n; ++i) m *= -2;
    r += f * m;
  }
  return r;
}

SkeinElement commutator(const SkeinElement& x, const SkeinElement& y) {
  return mul(x, y) - mul(y, x);
}

SkeinElement div_exact(const SkeinElement& x, const LaurentPoly& c) {
  SkeinElement out = x;
  for (auto& [k, v] : out.terms) v = v.div_exact(c);
  return out;
}

SkeinElement lie(const SkeinElement& x, const SkeinElement& y) {
  static const LaurentPoly denom = LaurentPoly::monomial(1, Rational(-1)) + LaurentPoly::Ainv();
  return div_exact(commutator(x, y), denom);
}

SkeinElement sigma(const SkeinElement& x, const SkeinElement& z) { return lie(x, z); }

SkeinElement basis_pair(int i, int j, int b) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > b) throw InvariantViolation("pair index out of range");
  if (i == j) return angle({i}, b).scaled(LaurentPoly(Rational(2)));
  return angle({i, j}, b);
}

SkeinElement basis_triple(int i, int j, int k, int b) {
  if (!(1 <= i && i < j && j < k && k <= b))
    throw InvariantViolation("triple indices must be strictly increasing");
  return angle({i, j, k}, b);
}

SkeinElement angle(const std::vector<int>& I, int b) {
  for (size_t i = 0; i + 1 < I.size(); ++i)
    if (I[i] >= I[i + 1]) throw InvariantViolation("puncture set must be strictly increasing");
  int n = (int)I.size();
  SkeinElement out = SkeinElement::zero(b);
  for (int mask = 0; mask < (1 << n); ++mask) {
    SubsetCurve s(0);
    uint64_t sm = 0;
    int sz = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) {
        sm |= uint64_t(1) << (I[j] - 1);
        ++sz;
      }
    s = SubsetCurve(sm);
    LaurentPoly sign(Rational((n - sz) % 2 == 0 ? 1 : -1));
    if (sz == 0)
      out += SkeinElement::unit(b).scaled(sign * LaurentPoly::loop_value());
    else
      out += curve(s, b).scaled(sign);
  }
  return out;
}

SkeinElement power(const SkeinElement& x, int n) {
  if (n < 0) throw InvariantViolation("negative power");
  SkeinElement r = SkeinElement::unit(x.b);
  for (int i = 0; i < n; ++i) r = mul(r, x);
  return r;
}

}  // namespace skein
