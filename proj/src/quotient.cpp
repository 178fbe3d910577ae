#include "skein/quotient.hpp"

#include <algorithm>

#include "skein/algebra.hpp"
#include "skein/errors.hpp"

#include <nlohmann/json.hpp>

namespace skein {

QuotClass2& QuotClass2::operator+=(const QuotClass2& o) {
  unit += o.unit;
  h += o.h;
  for (const auto& [k, v] : o.pairs) pairs[k] += v;
  for (const auto& [k, v] : o.triples) triples[k] += v;
  prune();
  return *this;
}

QuotClass2& QuotClass2::operator-=(const QuotClass2& o) { return *this += o.scaled(-1); }

QuotClass2 QuotClass2::operator+(const QuotClass2& o) const {
  QuotClass2 r = *this;
  r += o;
  return r;
}

QuotClass2 QuotClass2::operator-(const QuotClass2& o) const {
  QuotClass2 r = *this;
  r -= o;
  return r;
}

QuotClass2 QuotClass2::scaled(const Rational& c) const {
  QuotClass2 r;
  if (c == 0) return r;
  r.unit = unit * c;
  r.h = h * c;
  for (const auto& [k, v] : pairs) r.pairs[k] = v * c;
  for (const auto& [k, v] : triples) r.triples[k] = v * c;
  return r;
}

void QuotClass2::prune() {
  std::erase_if(pairs, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(triples, [](const auto& kv) { return kv.second == 0; });
}

bool QuotClass2::operator==(const QuotClass2& o) const {
  QuotClass2 a = *this, b = o;
  a.prune();
  b.prune();
  return a.unit == b.unit && a.h == b.h && a.pairs == b.pairs && a.triples == b.triples;
}

bool QuotClass2::is_zero() const {
  QuotClass2 a = *this;
  a.prune();
  return a.unit == 0 && a.h == 0 && a.pairs.empty() && a.triples.empty();
}

void QuotClass2::add_pair(int i, int j, const Rational& c) {
  pairs[{std::min(i, j), std::max(i, j)}] += c;
}

void QuotClass2::add_triple(int i, int j, int k, const Rational& c) {
  if (i == j || j == k || i == k) return;
  std::array<int, 3> t{i, j, k};
  int sign = 1;
  for (int a = 0; a < 2; ++a)
    for (int b2 = 0; b2 + 1 < 3 - a; ++b2)
      if (t[b2] > t[b2 + 1]) {
        std::swap(t[b2], t[b2 + 1]);
        sign = -sign;
      }
  triples[t] += sign * c;
}

nlohmann::json QuotClass2::to_json() const {
  nlohmann::json j;
  j["unit"] = rat_to_string(unit);
  j["h"] = rat_to_string(h);
  j["pairs"] = nlohmann::json::object();
  for (const auto& [k, v] : pairs)
    j["pairs"][std::to_string(k.first) + "," + std::to_string(k.second)] = rat_to_string(v);
  j["triples"] = nlohmann::json::object();
  for (const auto& [k, v] : triples)
    j["triples"][std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2])] =
        rat_to_string(v);
  return j;
}

QuotClass2 QuotClass2::from_json(const nlohmann::json& j) {
  QuotClass2 r;
  r.unit = rat_from_string(j.at("unit").get<std::string>());
  r.h = rat_from_string(j.at("h").get<std::string>());
  auto split = [](const std::string& s) {
    std::vector<int> out;
    size_t p = 0;
    while (p < s.size()) {
      size_t q = s.find(',', p);
      if (q == std::string::npos) q = s.size();
      out.push_back(std::stoi(s.substr(p, q - p)));
      p = q + 1;
    }
    return out;
  };
  if (j.contains("pairs"))
    for (const auto& [k, v] : j.at("pairs").items()) {
      auto idx = split(k);
      if (idx.size() != 2) throw InvariantViolation("bad pair key: " + k);
      r.pairs[{idx[0], idx[1]}] = rat_from_string(v.get<std::string>());
    }
  if (j.contains("triples"))
    for (const auto& [k, v] : j.at("triples").items()) {
      auto idx = split(k);
      if (idx.size() != 3) throw InvariantViolation("bad triple key: " + k);
      r.triples[{idx[0], idx[1], idx[2]}] = rat_from_string(v.get<std::string>());
    }
  r.prune();
  return r;
}

GroupWord GroupWord::operator*(const GroupWord& o) const {
  GroupWord r = *this;
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

GroupWord GroupWord::inverse() const {
  GroupWord r;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    r.letters.push_back({it->first, -it->second});
  return r;
}

namespace {

// Degree-<=3 truncation of the free associative algebra on e_1..e_b.
struct TruncTensor {
  Rational c0;
  std::map<int, Rational> d1;
  std::map<std::pair<int, int>, Rational> d2;
  std::map<std::array<int, 3>, Rational> d3;

  static TruncTensor one() {
    TruncTensor t;
    t.c0 = 1;
    return t;
  }

  // Multiply on the right by (sum over powers 0..3 of e_i with given coeffs).
  void mul_letter(int i, const std::array<Rational, 4>& coef) {
    TruncTensor r;
    auto add3 = [&](std::array<int, 3> k, const Rational& v) {
      if (v != 0) r.d3[k] += v;
    };
    auto add2 = [&](std::pair<int, int> k, const Rational& v) {
      if (v != 0) r.d2[k] += v;
    };
    r.c0 = c0 * coef[0];
    if (coef[1] != 0) r.d1[i] += c0 * coef[1];
    if (coef[2] != 0) add2({i, i}, c0 * coef[2]);
    if (coef[3] != 0) add3({i, i, i}, c0 * coef[3]);
    for (const auto& [a, v] : d1) {
      if (coef[0] != 0) r.d1[a] += v * coef[0];
      if (coef[1] != 0) add2({a, i}, v * coef[1]);
      if (coef[2] != 0) add3({a, i, i}, v * coef[2]);
    }
    for (const auto& [ab, v] : d2) {
      if (coef[0] != 0) add2(ab, v * coef[0]);
      if (coef[1] != 0) add3({ab.first, ab.second, i}, v * coef[1]);
    }
    for (const auto& [abc, v] : d3)
      if (coef[0] != 0) add3(abc, v * coef[0]);
    *this = r;
  }
};

}  // namespace

QuotClass2 subset_expand(const SubsetCurve& s) {
  QuotClass2 out;
  auto ps = s.punctures();
  for (size_t a = 0; a < ps.size(); ++a) {
    out.add_pair(ps[a], ps[a], rat(1, 2));
    for (size_t b2 = a + 1; b2 < ps.size(); ++b2) {
      out.add_pair(ps[a], ps[b2], 1);
      for (size_t c = b2 + 1; c < ps.size(); ++c) out.add_triple(ps[a], ps[b2], ps[c], 1);
    }
  }
  return out;
}

QuotClass2 nf2(const SkeinElement& x) {
  QuotClass2 out;
  for (const auto& [m, p] : x.terms) {
    auto jet = p.jet_minus1(1);
    int nc = static_cast<int>(m.comps().size());
    Rational pw = 1;  // (-2)^nc
    for (int a = 0; a < nc; ++a) pw *= -2;
    out.unit += jet[0] * pw;
    out.h += jet[1] * pw;
    Rational f = jet[0] * pw / -2;  // (-2)^(nc-1) factor
    for (const auto& s : m.comps()) out += subset_expand(s).scaled(f);
  }
  out.prune();
  return out;
}

QuotClass2 word_class(const GroupWord& w) {
  TruncTensor t = TruncTensor::one();
  for (auto [i, e] : w.letters) {
    if (e == 1)
      t.mul_letter(i, {1, 1, 0, 0});
    else if (e == -1)
      t.mul_letter(i, {1, -1, 1, -1});
    else
      throw InvariantViolation("word exponents must be +1 or -1");
  }
  QuotClass2 out;
  for (const auto& [a, v] : t.d1) out.add_pair(a, a, v / 2);
  for (const auto& [ab, v] : t.d2) out.add_pair(ab.first, ab.second, v);
  for (const auto& [abc, v] : t.d3) out.add_triple(abc[0], abc[1], abc[2], v);
  out.prune();
  return out;
}

QuotClass2 link_class(const Diagram& d) {
  SkeinElement r = resolve(d);
  int n = static_cast<int>(d.strands.size());
  if (n == 1) {
    QuotClass2 out = nf2(r);
    out.unit += 2;
    // class of A - 1/A is 2(A+1); subtract 3*writhe copies of it
    out.h -= Rational(6) * writhe(d);
    out.prune();
    return out;
  }
  Rational norm = 1;
  for (int a = 0; a < n; ++a) norm /= -2;
  return nf2(r.scaled(LaurentPoly(norm)));
}

QuotClass2 lambda_map(int i, int j, int k) {
  QuotClass2 out;
  out.add_triple(i, j, k, 1);
  return out;
}

QuotClass2 rho_unit() {
  QuotClass2 out;
  out.h = 1;
  return out;
}

QuotClass2 rho_pair(int i, int j) {
  QuotClass2 out;
  out.add_pair(i, j, 1);
  return out;
}

SkeinElement lift_class(const QuotClass2& q, int b) {
  SkeinElement out = SkeinElement::zero(b);
  if (q.unit != 0) out += SkeinElement::unit(b).scaled(LaurentPoly(q.unit));
  if (q.h != 0) out += SkeinElement::unit(b).scaled(LaurentPoly::h().scaled(q.h));
  for (const auto& [ij, v] : q.pairs) {
    if (v == 0) continue;
    if (ij.first == ij.second)
      out += angle({ij.first}, b).scaled(LaurentPoly(v * 2));
    else
      out += angle({ij.first, ij.second}, b).scaled(LaurentPoly(v));
  }
  for (const auto& [t, v] : q.triples) {
    if (v == 0) continue;
    out += angle({t[0], t[1], t[2]}, b).scaled(LaurentPoly(v));
  }
  return out;
}

bool f3_test(const SkeinElement& x) {
  if (eps(x) != 0) return false;
  QuotClass2 c = nf2(x);
  return c.unit == 0 && c.h == 0 && c.pairs.empty();
}

QuotClass2 ftype_sum_check(const Multicurve& m, int n) {
  int nc = static_cast<int>(m.comps().size());
  if (nc <= n) throw InvariantViolation("need more components than the order");
  if (n > 2) throw InvariantViolation("only orders up to 2 are checkable");
  SkeinElement sum = SkeinElement::zero(m.b());
  for (uint32_t mask = 0; mask < (1u << nc); ++mask) {
    std::vector<SubsetCurve> comps;
    Rational coef = 1;
    for (int a = 0; a < nc; ++a)
      if (mask & (1u << a)) {
        comps.push_back(m.comps()[a]);
        coef /= 2;  // (-1)^k (-2)^(-k) = 2^(-k)
      }
    sum += SkeinElement::monomial(Multicurve(comps, m.b()), LaurentPoly(coef));
  }
  return nf2(sum);
}

}  // namespace skein
