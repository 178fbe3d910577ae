#include "skein/suites.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>

#include "skein/algebra.hpp"
#include "skein/quotient.hpp"
#include "skein/reduce.hpp"
#include "skein/series.hpp"
#include "skein/theta.hpp"

#include <nlohmann/json.hpp>

namespace skein {

namespace {

LaurentPoly mono(int c, int e) { return LaurentPoly::monomial(e, Rational(c)); }

SubsetCurve sc(std::initializer_list<int> l) { return SubsetCurve::of(l); }

SkeinElement curve_elem(const SubsetCurve& s, int b) {
  return SkeinElement::monomial(Multicurve({s}, b), LaurentPoly(Rational(1)));
}

void add(SuiteResult& r, const std::string& name, bool ok) {
  r.checks.push_back({name, ok});
}

// Closure of an n-strand braid word in the unpunctured disk.  Each letter is
// (i, sign): the strands on lanes i and i+1 swap; for sign +1 the ascending
// strand passes over.  Lanes are y = 1..n; return arcs run above the braid,
// nested so that no two closure arcs cross.
Diagram braid_closure(int n, const std::vector<std::pair<int, int>>& word) {
  int m = (int)word.size();
  // Lane occupied by each braid strand at each time 0..m.
  std::vector<std::vector<int>> lane(n, std::vector<int>(m + 1));
  std::vector<int> at(n);  // lane -> strand currently there
  for (int j = 0; j < n; ++j) {
    lane[j][0] = j + 1;
    at[j] = j;
  }
  struct Cr {
    int stepk;
    int over_strand, under_strand;
    Rational y;
  };
  std::vector<Cr> crs;
  for (int k = 0; k < m; ++k) {
    auto [i, sign] = word[k];
    int lo = at[i - 1], hi = at[i];
    for (int j = 0; j < n; ++j) lane[j][k + 1] = lane[j][k];
    lane[lo][k + 1] = i + 1;
    lane[hi][k + 1] = i;
    at[i - 1] = hi;
    at[i] = lo;
    // `lo` ascends; for a positive letter it is the over branch.
    crs.push_back({k, sign > 0 ? lo : hi, sign > 0 ? hi : lo,
                   Rational(2 * i + 1, 2)});
  }
  // Assemble closed loops: braid strand j, then the closure arc from its end
  // lane back to that same lane on the left, then the strand starting there.
  std::vector<int> start_of_lane(n + 1);
  for (int j = 0; j < n; ++j) start_of_lane[lane[j][0]] = j;
  Diagram d;
  d.b = 0;
  std::vector<int> strand_loop(n, -1), strand_offset(n, 0);
  std::vector<bool> used(n, false);
  for (int j0 = 0; j0 < n; ++j0) {
    if (used[j0]) continue;
    std::vector<Vec2> pts;
    int j = j0;
    do {
      used[j] = true;
      strand_loop[j] = (int)d.strands.size();
      strand_offset[j] = (int)pts.size();
      for (int k = 0; k <= m; ++k) pts.push_back({Rational(k), Rational(lane[j][k])});
      int end = lane[j][m];
      Rational xr(m * 10 + 10 * (n - end) + 10, 10);
      Rational xl = -Rational(10 * (n - end) + 10, 10);
      Rational top(n + 1 + (n - end));
      pts.push_back({xr, Rational(end)});
      pts.push_back({xr, top});
      pts.push_back({xl, top});
      pts.push_back({xl, Rational(end)});
      j = start_of_lane[end];
    } while (j != j0);
    d.strands.push_back(std::move(pts));
  }
  for (const auto& c : crs) {
    Crossing cr;
    cr.p = {Rational(2 * c.stepk + 1, 2), c.y};
    cr.s_over = strand_loop[c.over_strand];
    cr.seg_over = strand_offset[c.over_strand] + c.stepk;
    cr.s_under = strand_loop[c.under_strand];
    cr.seg_under = strand_offset[c.under_strand] + c.stepk;
    d.crossings.push_back(cr);
  }
  validate_diagram(d);
  return d;
}

}  // namespace

bool SuiteResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["suite"] = name;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}});
  j["verdict"] = passed() ? "PASS" : "FAIL";
  return j;
}

SuiteResult suite_product_table(int b) {
  SuiteResult r;
  r.name = "product-table";
  GramResult g = gram(b);
  add(r, "closed-form product table", g.table_ok);
  add(r, "quadratic-form independence", g.independent);
  int expect = 1 + b * (b + 1) / 2 + b * (b - 1) * (b - 2) / 6;
  add(r, "representative count", (int)g.labels.size() == expect);
  return r;
}

SuiteResult suite_product_identities() {
  SuiteResult r;
  r.name = "product-identities";
  const int b = 4;
  auto ag = [&](std::initializer_list<int> l) { return angle(std::vector<int>(l), b); };
  auto cv = [&](std::initializer_list<int> l) { return curve(SubsetCurve::of(l), b); };

  // Anticommutator of the crossing pair-curve classes.
  SkeinElement lhs1 = mul(ag({1, 3}), ag({2, 4})) + mul(ag({2, 4}), ag({1, 3}));
  SkeinElement rhs1 =
      ag({1, 2, 3, 4}).scaled((mono(1, 2) + mono(1, -2)).scaled(Rational(2))) +
      (mul(ag({1, 2}), ag({3, 4})) + mul(ag({1, 4}), ag({2, 3})))
          .scaled(mono(1, 4) + mono(1, -4)) +
      (mul(mul(ag({1, 2}), ag({3})), ag({4})) + mul(mul(ag({2, 3}), ag({4})), ag({1})) +
       mul(mul(ag({1, 4}), ag({2})), ag({3})) + mul(mul(ag({3, 4}), ag({1})), ag({2})))
          .scaled(mono(1, 2) + mono(1, -2)) +
      (mul(ag({1}), ag({2, 3, 4})) + mul(ag({2}), ag({1, 3, 4})) +
       mul(ag({3}), ag({1, 2, 4})) + mul(ag({4}), ag({1, 2, 3})))
          .scaled(LaurentPoly(Rational(2))) +
      mul(mul(mul(ag({1}), ag({2})), ag({3})), ag({4})).scaled(LaurentPoly(Rational(2)));
  add(r, "anticommutator identity", (lhs1 - rhs1).terms.empty());

  // Commutator of the crossing pair-curve classes.
  auto R = [&](int i, int j) {
    return cv({i, j}).scaled(LaurentPoly(Rational(2))) - mul(cv({i}), cv({j}));
  };
  LaurentPoly ap2sq = (mono(1, 1) + mono(1, -1)) * (mono(1, 1) + mono(1, -1));
  SkeinElement lhs2 = mul(ag({1, 3}), ag({2, 4})) - mul(ag({2, 4}), ag({1, 3}));
  SkeinElement inner =
      (mul(R(1, 2), R(3, 4)) - mul(R(1, 4), R(2, 3))).scaled(LaurentPoly(Rational(1, 2))) +
      (mul(cv({1, 4}), cv({2, 3})) - mul(cv({1, 2}), cv({3, 4}))).scaled(ap2sq);
  SkeinElement rhs2 = inner.scaled(mono(1, 2) + mono(-1, -2));
  add(r, "commutator identity", (lhs2 - rhs2).terms.empty());
  return r;
}

SuiteResult suite_basis(int b, int nvectors, unsigned seed) {
  SuiteResult r;
  r.name = "basis";

  // Quotient-basis representatives without the unit; the diagonal
  // representatives are shifted by -12(A+1) to orthogonalize against the
  // scalar layer.
  struct Rep {
    FormalProduct p;
    int layer;  // 0 scalar, 1 diagonal pair, 2 pair, 3 triple
  };
  std::vector<Rep> reps;
  reps.push_back({FormalProduct::from_element(
                      SkeinElement::unit(b).scaled(LaurentPoly::h())),
                  0});
  for (int i = 1; i <= b; ++i) {
    SkeinElement e = basis_pair(i, i, b) -
                     SkeinElement::unit(b).scaled(LaurentPoly::h().scaled(Rational(12)));
    reps.push_back({FormalProduct::from_element(e), 1});
  }
  for (int i = 1; i <= b; ++i)
    for (int j = i + 1; j <= b; ++j)
      reps.push_back({FormalProduct::from_element(basis_pair(i, j, b)), 2});
  for (int i = 1; i <= b; ++i)
    for (int j = i + 1; j <= b; ++j)
      for (int k = j + 1; k <= b; ++k)
        reps.push_back({FormalProduct::from_element(basis_triple(i, j, k, b)), 3});

  int n = (int)reps.size();
  int expect = 1 + b + b * (b - 1) / 2 + b * (b - 1) * (b - 2) / 6;
  add(r, "dimension count", n == expect && n + 1 == 2 + b * (b + 1) / 2 +
                                                      b * (b - 1) * (b - 2) / 6);

  // theta is bilinear over the representatives, so the quadratic form of
  // every random vector reduces to one precomputed matrix.
  std::vector<std::vector<std::vector<Rational>>> jets(
      n, std::vector<std::vector<Rational>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jets[i][j] = theta(reps[i].p * reps[j].p).jet_minus1(3);

  std::mt19937 rng(seed);
  auto rnd = [&]() { return Rational((int)(rng() % 11) - 5); };
  bool quad_ok = true, triple_ok = true;
  for (int trial = 0; trial < nvectors; ++trial) {
    bool degree2zero = (trial % 4 == 3);
    std::vector<Rational> c(n);
    for (int i = 0; i < n; ++i)
      c[i] = (degree2zero && reps[i].layer != 3) ? Rational(0) : rnd();
    std::vector<Rational> jet(4, Rational(0));
    for (int i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (c[j] == 0) continue;
        for (int t = 0; t < 4; ++t) jet[t] += c[i] * c[j] * jets[i][j][t];
      }
    }
    Rational want2(0);
    for (int i = 0; i < n; ++i) {
      if (reps[i].layer == 0) want2 += c[i] * c[i];
      if (reps[i].layer == 1) want2 += Rational(96) * c[i] * c[i];
      if (reps[i].layer == 2) want2 += Rational(48) * c[i] * c[i];
    }
    if (jet[0] != 0 || jet[1] != 0 || jet[2] != want2) quad_ok = false;
    if (degree2zero) {
      Rational want3(0);
      for (int i = 0; i < n; ++i)
        if (reps[i].layer == 3) want3 += Rational(192) * c[i] * c[i];
      if (jet[3] != want3) triple_ok = false;
    }
  }
  add(r, "order-two coefficient of the squared form", quad_ok);
  add(r, "order-three coefficient on the triple layer", triple_ok);
  return r;
}

SuiteResult suite_braid() {
  SuiteResult r;
  r.name = "braid";
  add(r, "twist vs exponential b=3 z=c23",
      dehn_verify(sc({1, 2}), curve_elem(sc({2, 3}), 3)).equal);
  add(r, "twist vs exponential b=3 z=c13",
      dehn_verify(sc({1, 2}), curve_elem(sc({1, 3}), 3)).equal);
  add(r, "twist vs exponential b=3 z=c3",
      dehn_verify(sc({1, 2}), curve_elem(sc({3}), 3)).equal);
  add(r, "twist vs exponential b=4 z=c12",
      dehn_verify(sc({2, 3}), curve_elem(sc({1, 2}), 4)).equal);
  add(r, "twist vs exponential b=4 z=c34",
      dehn_verify(sc({2, 3}), curve_elem(sc({3, 4}), 4)).equal);
  for (const char* rel : {"1", "2", "3", "4", "5", "6", "7"})
    add(r, std::string("presentation relation ") + rel, zeta_check(rel, 4).equal);
  add(r, "lantern relation", zeta_check("lantern", 3).equal);
  return r;
}

SuiteResult suite_properties(unsigned seed) {
  SuiteResult r;
  r.name = "properties";
  std::mt19937 rng(seed);

  // Reidemeister I: a curl rescales the resolution by -A^{+-3} and leaves
  // the writhe-corrected class alone.
  {
    bool ok = true;
    for (auto s : {sc({1}), sc({1, 2}), sc({2, 3}), sc({1, 2, 3})}) {
      Diagram d = realize(Multicurve({s}, 3), 3);
      SkeinElement base = resolve(d);
      for (int i = 1; i <= 3; ++i) {
        if (!s.contains(i)) continue;
        Diagram plus = insert_ray_twist(d, i, +1);
        Diagram minus = insert_ray_twist(d, i, -1);
        ok = ok && resolve(plus) == base.scaled(mono(-1, 3));
        ok = ok && resolve(minus) == base.scaled(mono(-1, -3));
        ok = ok && link_class(plus) == link_class(d);
        ok = ok && link_class(minus) == link_class(d);
      }
    }
    add(r, "kink rescaling and corrected-class invariance", ok);
  }

  // Reidemeister II: a cancelling crossing pair is invisible.
  {
    Diagram d2 = braid_closure(2, {{1, +1}, {1, -1}});
    LaurentPoly unlink2 = LaurentPoly::loop_value() * LaurentPoly::loop_value();
    add(r, "cancelling crossing pair", bracket_disk(d2) == unlink2);
  }

  // Reidemeister III: the two sides of the triangle move agree.
  {
    bool ok = true;
    for (int s1 : {+1, -1})
      for (int s2 : {+1, -1}) {
        Diagram a = braid_closure(3, {{1, s1}, {2, s2}, {1, s1}});
        Diagram b = braid_closure(3, {{2, s1}, {1, s2}, {2, s1}});
        ok = ok && bracket_disk(a) == bracket_disk(b);
      }
    add(r, "triangle move", ok);
  }

  // Confluence: the resolution does not depend on the crossing order.
  {
    bool ok = true;
    Multicurve m1({sc({1, 2})}, 3), m2({sc({2, 3})}, 3);
    Diagram d = stack(insert_ray_twist(realize(m1, 3), 1, +1), realize(m2, 3));
    SkeinElement ref = resolve(d);
    for (int it = 0; it < 5; ++it) {
      Diagram s = d;
      std::shuffle(s.crossings.begin(), s.crossings.end(), rng);
      ok = ok && resolve(s) == ref;
    }
    add(r, "confluence under crossing order", ok);
  }

  // Trace property of theta on random pairs.
  {
    bool ok = true;
    const int b = 4;
    for (int trial = 0; trial < 100; ++trial) {
      uint64_t m1 = 1 + rng() % 15, m2 = 1 + rng() % 15;
      Multicurve x({SubsetCurve(m1)}, b), y({SubsetCurve(m2)}, b);
      ok = ok && theta_stack({x, y}, b) == theta_stack({y, x}, b);
    }
    add(r, "trace property on random pairs", ok);
  }

  // Centrality of the boundary-parallel curve.
  {
    bool ok = true;
    for (int b : {3, 4}) {
      uint64_t full = (uint64_t(1) << b) - 1;
      SkeinElement cb = curve(SubsetCurve(full), b);
      for (uint64_t m = 1; m < (uint64_t(1) << b); ++m) {
        SkeinElement x = curve(SubsetCurve(m), b);
        ok = ok && mul(cb, x) == mul(x, cb);
      }
      SkeinElement prod = mul(curve(sc({1, 3}), b), curve(sc({2, 3}), b));
      ok = ok && mul(cb, prod) == mul(prod, cb);
    }
    add(r, "centrality of the boundary curve", ok);
  }

  // The word route and the curve route into the quotient agree.
  {
    bool ok = true;
    for (int b = 2; b <= 5; ++b) {
      for (uint32_t mask = 1; mask < (1u << b); ++mask) {
        GroupWord w;
        for (int i = 1; i <= b; ++i)
          if (mask & (1u << (i - 1))) w = w * GroupWord::gen(i);
        SkeinElement shifted = curve(SubsetCurve(mask), b) +
                               SkeinElement::unit(b).scaled(LaurentPoly(Rational(2)));
        ok = ok && nf2(shifted) == word_class(w);
      }
    }
    add(r, "word route vs curve route", ok);
  }

  return r;
}

std::vector<SuiteResult> suite_all(unsigned seed) {
  return {suite_product_table(4), suite_product_identities(),
          suite_basis(4, 25, seed), suite_braid(), suite_properties(seed)};
}

}  // namespace skein
