#include "skein/theta.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "skein/errors.hpp"
#include "skein/quotient.hpp"
#include "skein/reduce.hpp"

#include <nlohmann/json.hpp>

namespace skein {

// ---------------------------------------------------------------------------
// Bracket by frontier contraction
// ---------------------------------------------------------------------------

namespace {

struct Dir {
  Rational x, y;
};

bool angle_less(const Dir& a, const Dir& b) {
  auto half = [](const Dir& d) { return (d.y < 0 || (d.y == 0 && d.x < 0)) ? 1 : 0; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  Rational cr = a.x * b.y - a.y * b.x;
  if (cr != 0) return cr > 0;
  throw GeneralPositionFailure("parallel branches at crossing");
}

bool same_ray_dir(const Dir& a, const Dir& b) {
  return a.x * b.y - a.y * b.x == 0 && a.x * b.x + a.y * b.y > 0;
}

}  // namespace

LaurentPoly bracket_tl(const Diagram& d) {
  const int nc = (int)d.crossings.size();
  const LaurentPoly delta = LaurentPoly::loop_value();

  // Crossing slot geometry (branch directions in ccw order, over flags).
  struct CrossInfo {
    Vec2 p;
    Dir dir[4];
    bool over[4];
  };
  std::vector<CrossInfo> cinfo(nc);
  for (int c = 0; c < nc; ++c) {
    const Crossing& cr = d.crossings[c];
    auto seg_dir = [&](int s, int i) {
      const auto& pts = d.strands[s];
      const Vec2& a = pts[i];
      const Vec2& e = pts[(i + 1) % pts.size()];
      return Dir{e.x - a.x, e.y - a.y};
    };
    Dir o = seg_dir(cr.s_over, cr.seg_over);
    Dir u = seg_dir(cr.s_under, cr.seg_under);
    struct Tmp { Dir d; bool over; };
    std::vector<Tmp> ends = {{o, true}, {{-o.x, -o.y}, true}, {u, false}, {{-u.x, -u.y}, false}};
    std::sort(ends.begin(), ends.end(),
              [](const Tmp& a, const Tmp& bb) { return angle_less(a.d, bb.d); });
    cinfo[c].p = cr.p;
    for (int s = 0; s < 4; ++s) {
      cinfo[c].dir[s] = ends[s].d;
      cinfo[c].over[s] = ends[s].over;
    }
  }

  // Split strands into arcs; record each arc as a pairing of crossing ends.
  struct Hit {
    int seg;
    Rational t;
    int cross;
  };
  std::vector<std::vector<Hit>> hits(d.strands.size());
  for (int c = 0; c < nc; ++c) {
    const Crossing& cr = d.crossings[c];
    auto param = [&](int s, int i) -> Rational {
      const auto& pts = d.strands[s];
      const Vec2& a = pts[i];
      const Vec2& e = pts[(i + 1) % pts.size()];
      if (e.x != a.x) return Rational((cr.p.x - a.x) / (e.x - a.x));
      return Rational((cr.p.y - a.y) / (e.y - a.y));
    };
    hits[cr.s_over].push_back({cr.seg_over, param(cr.s_over, cr.seg_over), c});
    hits[cr.s_under].push_back({cr.seg_under, param(cr.s_under, cr.seg_under), c});
  }

  auto slot_of = [&](int c, const Dir& dir) {
    for (int s = 0; s < 4; ++s)
      if (same_ray_dir(cinfo[c].dir[s], dir)) return c * 4 + s;
    throw InvariantViolation("arc end does not match a crossing branch");
  };

  std::map<int, int> partner;  // arc edge: end id -> end id
  int freeLoops = 0;
  for (int s = 0; s < (int)d.strands.size(); ++s) {
    const auto& pts = d.strands[s];
    int np = (int)pts.size();
    auto& h = hits[s];
    if (h.empty()) {
      ++freeLoops;
      continue;
    }
    std::sort(h.begin(), h.end(), [](const Hit& x, const Hit& y) {
      return std::tie(x.seg, x.t) < std::tie(y.seg, y.t);
    });
    int m = (int)h.size();
    for (int k = 0; k < m; ++k) {
      const Hit& from = h[k];
      const Hit& to = h[(k + 1) % m];
      bool wrap = (k + 1 == m);
      int cnt = (to.seg - from.seg + np) % np;
      if (wrap && cnt == 0) cnt = np;
      std::vector<Vec2> path;
      path.push_back(cinfo[from.cross].p);
      for (int j = 1; j <= cnt; ++j) path.push_back(pts[(from.seg + j) % np]);
      path.push_back(cinfo[to.cross].p);
      int e0 = slot_of(from.cross, Dir{path[1].x - path[0].x, path[1].y - path[0].y});
      size_t L = path.size();
      int e1 = slot_of(to.cross, Dir{path[L - 2].x - path[L - 1].x, path[L - 2].y - path[L - 1].y});
      partner[e0] = e1;
      partner[e1] = e0;
    }
  }

  // Process crossings left to right, tracking the pairing of open path ends.
  std::vector<int> order(nc);
  for (int c = 0; c < nc; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(cinfo[a].p.x, cinfo[a].p.y) < std::tie(cinfo[b].p.x, cinfo[b].p.y);
  });

  using Frontier = std::map<int, int>;  // symmetric pairing on open ends
  std::map<Frontier, LaurentPoly> states;
  states[{}] = LaurentPoly(Rational(1));

  for (int c : order) {
    std::map<Frontier, LaurentPoly> next;
    for (const auto& [f0, w0] : states) {
      for (int choice = 0; choice < 2; ++choice) {
        Frontier f = f0;
        LaurentPoly w = w0 * LaurentPoly::monomial(choice == 0 ? 1 : -1);
        // Ensure the four incident arcs are present as open paths.
        for (int s = 0; s < 4; ++s) {
          int e = c * 4 + s;
          if (!f.count(e)) {
            int p = partner.at(e);
            f[e] = p;
            f[p] = e;
          }
        }
        // Smoothing pairs: over-slot to ccw neighbor (A) or cw neighbor (B).
        for (int s = 0; s < 4; ++s) {
          if (!cinfo[c].over[s]) continue;
          int u = c * 4 + s;
          int v = c * 4 + (choice == 0 ? (s + 1) % 4 : (s + 3) % 4);
          int pu = f.at(u), pv = f.at(v);
          f.erase(u);
          f.erase(v);
          if (pu == v) {
            w *= delta;  // the connection closed a loop
          } else {
            f[pu] = pv;
            f[pv] = pu;
          }
        }
        next[f] += w;
      }
    }
    states.clear();
    for (auto& [f, w] : next)
      if (!w.is_zero()) states.emplace(std::move(f), std::move(w));
  }

  LaurentPoly out;
  for (const auto& [f, w] : states) {
    if (!f.empty()) throw InvariantViolation("open strand ends after contraction");
    out += w;
  }
  for (int t = 0; t < freeLoops; ++t) out *= delta;
  if (nc == 0 && freeLoops == 0) out = LaurentPoly(Rational(1));
  return out;
}

// ---------------------------------------------------------------------------
// theta
// ---------------------------------------------------------------------------

namespace {

// The twist on the cable at ray i is the full twist of the band: a pure
// braid full twist plus one positive curl per strand.  A curl scales the
// bracket by -A^3, so the curls are applied as a global factor and only the
// braid part is inserted geometrically (it is trivial for a single strand).
LaurentPoly theta_of_diagram(Diagram d) {
  int passages = 0;
  for (int i = 1; i <= d.b; ++i) {
    int n = 0;
    for (const auto& pts : d.strands) {
      int np = (int)pts.size();
      for (int k = 0; k < np; ++k)
        if (segment_ray_crossing(pts[k], pts[(k + 1) % np], i)) ++n;
    }
    passages += n;
    if (n >= 2) d = insert_ray_twist(d, i, +1);
  }
  d.b = 0;
  return bracket_tl(d) * LaurentPoly::monomial(3, Rational(-1)).pow((unsigned)passages);
}

}  // namespace

LaurentPoly theta_multicurve(const Multicurve& m) {
  static std::map<std::pair<int, Multicurve>, LaurentPoly> cache;
  auto key = std::make_pair(m.b(), m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  LaurentPoly r = theta_of_diagram(realize(m, m.b()));
  cache.emplace(std::move(key), r);
  return r;
}

LaurentPoly theta(const SkeinElement& x) {
  LaurentPoly out;
  for (const auto& [k, v] : x.terms) out += v * theta_multicurve(k);
  return out;
}

LaurentPoly theta_stack(const std::vector<Multicurve>& factors, int b) {
  static std::map<std::pair<int, std::vector<Multicurve>>, LaurentPoly> cache;
  auto key = std::make_pair(b, factors);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  LaurentPoly r;
  if (factors.empty()) {
    Diagram d;
    d.b = b;
    r = theta_of_diagram(d);
  } else {
    Diagram d = realize(factors[0], b);
    for (size_t i = 1; i < factors.size(); ++i) d = stack(d, realize(factors[i], b));
    r = theta_of_diagram(d);
  }
  cache.emplace(std::move(key), r);
  return r;
}

// ---------------------------------------------------------------------------
// Formal products
// ---------------------------------------------------------------------------

FormalProduct FormalProduct::unit(int b) {
  FormalProduct p;
  p.b = b;
  p.terms.push_back({{}, LaurentPoly(Rational(1))});
  return p;
}

FormalProduct FormalProduct::from_element(const SkeinElement& x) {
  FormalProduct p;
  p.b = x.b;
  for (const auto& [k, v] : x.terms) {
    if (k.comps().empty())
      p.terms.push_back({{}, v});
    else
      p.terms.push_back({{k}, v});
  }
  return p;
}

namespace {

FormalProduct normalized(int b,
                         std::map<std::vector<Multicurve>, LaurentPoly>&& acc) {
  FormalProduct p;
  p.b = b;
  for (auto& [fs, c] : acc)
    if (!c.is_zero()) p.terms.push_back({fs, std::move(c)});
  return p;
}

}  // namespace

FormalProduct FormalProduct::operator*(const FormalProduct& o) const {
  if (b != o.b) throw InvariantViolation("formal product puncture count mismatch");
  std::map<std::vector<Multicurve>, LaurentPoly> acc;
  for (const auto& [f1, c1] : terms)
    for (const auto& [f2, c2] : o.terms) {
      std::vector<Multicurve> fs = f1;
      fs.insert(fs.end(), f2.begin(), f2.end());
      acc[fs] += c1 * c2;
    }
  return normalized(b, std::move(acc));
}

FormalProduct FormalProduct::operator+(const FormalProduct& o) const {
  if (b != o.b) throw InvariantViolation("formal product puncture count mismatch");
  std::map<std::vector<Multicurve>, LaurentPoly> acc;
  for (const auto& [f, c] : terms) acc[f] += c;
  for (const auto& [f, c] : o.terms) acc[f] += c;
  return normalized(b, std::move(acc));
}

FormalProduct FormalProduct::operator-(const FormalProduct& o) const {
  return *this + o.scaled(LaurentPoly(Rational(-1)));
}

FormalProduct FormalProduct::scaled(const LaurentPoly& c) const {
  FormalProduct p;
  p.b = b;
  for (const auto& [f, w] : terms) {
    LaurentPoly u = w * c;
    if (!u.is_zero()) p.terms.push_back({f, u});
  }
  return p;
}

SkeinElement FormalProduct::project() const {
  SkeinElement out = SkeinElement::zero(b);
  for (const auto& [fs, c] : terms) {
    SkeinElement t = SkeinElement::unit(b);
    for (const auto& m : fs) t = mul(t, curve(m));
    out += t.scaled(c);
  }
  return out;
}

LaurentPoly theta(const FormalProduct& x) {
  LaurentPoly out;
  for (const auto& [fs, c] : x.terms) out += c * theta_stack(fs, x.b);
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

LaurentPoly K_L(int n) {
  if (n < 0) throw InvariantViolation("clasp count must be nonnegative");
  LaurentPoly r = LaurentPoly::monomial(2 * n) *
                  (LaurentPoly::monomial(4) + LaurentPoly(Rational(1)) + LaurentPoly::monomial(-4));
  r += LaurentPoly::monomial(-6 * n);
  return r;
}

LaurentPoly theta_pair_oracle(const std::vector<int>& I, const std::vector<int>& J) {
  std::vector<int> inter;
  for (int i : I)
    if (std::find(J.begin(), J.end(), i) != J.end()) inter.push_back(i);
  int n = (int)I.size(), m = (int)J.size(), k = (int)inter.size();
  LaurentPoly f = LaurentPoly::monomial(3, Rational(-1)).pow((unsigned)(n + m));
  return f * K_L(k);
}

// ---------------------------------------------------------------------------
// Gram matrices
// ---------------------------------------------------------------------------

namespace {

// The three core polynomials of the product table: the evaluations for
// intersection sizes 1, 2 and 3 once the (A^3+1) powers are stripped.
LaurentPoly table_core(int k) {
  auto P = [](std::initializer_list<std::pair<int, int>> mono) {
    LaurentPoly p;
    for (auto [e, c] : mono) p += LaurentPoly::monomial(e, Rational(c));
    return p;
  };
  switch (k) {
    case 0: {
      LaurentPoly dd = LaurentPoly::monomial(2) + LaurentPoly::monomial(-2);
      return dd * dd;
    }
    case 1:
      return P({{12, 1}, {8, 1}, {7, 2}, {4, 2}, {3, 4}, {0, 3}, {-1, 2}, {-4, 1}});
    case 2:
      return P({{20, 1}, {16, 1}, {15, 4}, {12, 3}, {11, 4}, {10, 4}, {8, 2}, {7, 8},
                {6, 8}, {4, 3}, {3, 12}, {2, 4}, {0, 5}, {-1, 4}, {-4, 1}});
    case 3:
      return P({{28, 1}, {24, 1}, {23, 6}, {20, 4}, {19, 6}, {18, 12}, {16, 3}, {15, 18},
                {14, 12}, {13, 8}, {12, 6}, {11, 12}, {10, 24}, {9, 16}, {8, 3}, {7, 18},
                {6, 36}, {5, 8}, {4, 4}, {3, 30}, {2, 12}, {0, 9}, {-1, 6}, {-4, 1}});
    default:
      throw InvariantViolation("no closed form for intersection size > 3");
  }
}

// Closed form for theta(<S><T>) with |S|, |T| <= 3:
// (-1)^{|S|+|T|} (A^3+1)^{|S|+|T|-2k} * core(k), k = #(S cap T).
LaurentPoly table_value(const std::vector<int>& S, const std::vector<int>& T) {
  int k = 0;
  for (int i : S)
    if (std::find(T.begin(), T.end(), i) != T.end()) ++k;
  int n = (int)S.size(), m = (int)T.size();
  LaurentPoly a3p1 = LaurentPoly::monomial(3) + LaurentPoly(Rational(1));
  LaurentPoly v = a3p1.pow((unsigned)(n + m - 2 * k)) * table_core(k);
  if ((n + m) % 2 != 0) v = -v;
  return v;
}

LaurentPoly aplus1_pow(int k) { return LaurentPoly::h().pow((unsigned)k); }

// residue of p mod (A+1)^k as a polynomial in (A+1)
LaurentPoly residue_mod(const LaurentPoly& p, int k) {
  auto jet = p.jet_minus1(k - 1);
  LaurentPoly r;
  for (int t = 0; t < k; ++t) r += aplus1_pow(t).scaled(jet[t]);
  return r;
}

struct RepKey {
  std::string label;
  std::vector<int> set;  // empty = the scalar A+1
  int coreWeight;        // 1, or 2/4 for diagonal-pair conventions
};

}  // namespace

GramResult gram(int b, unsigned seed) {
  GramResult g;
  g.b = b;

  struct Rep {
    std::string label;
    FormalProduct p;
    std::vector<int> set;  // underlying puncture set; empty for A+1
    int scale;             // <i,i> = 2<{i}>
  };
  std::vector<Rep> reps;
  reps.push_back({"h", FormalProduct::from_element(
                           SkeinElement::unit(b).scaled(LaurentPoly::h())),
                  {}, 0});
  for (int i = 1; i <= b; ++i)
    for (int j = i; j <= b; ++j) {
      std::ostringstream lab;
      lab << "<" << i << "," << j << ">";
      std::vector<int> st = (i == j) ? std::vector<int>{i} : std::vector<int>{i, j};
      reps.push_back({lab.str(), FormalProduct::from_element(basis_pair(i, j, b)), st,
                      i == j ? 2 : 1});
    }
  for (int i = 1; i <= b; ++i)
    for (int j = i + 1; j <= b; ++j)
      for (int k = j + 1; k <= b; ++k) {
        std::ostringstream lab;
        lab << "<" << i << "," << j << "," << k << ">";
        reps.push_back({lab.str(), FormalProduct::from_element(basis_triple(i, j, k, b)),
                        {i, j, k}, 1});
      }

  int n = (int)reps.size();
  g.labels.resize(n);
  g.entries.assign(n, std::vector<LaurentPoly>(n));
  for (int i = 0; i < n; ++i) g.labels[i] = reps[i].label;

  bool ok = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LaurentPoly v = theta(reps[i].p * reps[j].p);
      g.entries[i][j] = v;
      // Expected closed form.
      LaurentPoly want;
      if (reps[i].scale == 0 && reps[j].scale == 0) {
        want = aplus1_pow(2);  // theta of the empty link is 1
      } else if (reps[i].scale == 0 || reps[j].scale == 0) {
        const Rep& r = reps[i].scale == 0 ? reps[j] : reps[i];
        int sz = (int)r.set.size();
        LaurentPoly th = (LaurentPoly::monomial(3) + LaurentPoly(Rational(1))).pow((unsigned)sz) *
                         LaurentPoly::loop_value();
        if (sz % 2 != 0) th = -th;
        want = LaurentPoly::h() * th.scaled(Rational(r.scale == 2 ? 2 : 1));
      } else {
        want = table_value(reps[i].set, reps[j].set)
                   .scaled(Rational(reps[i].scale == 2 ? 2 : 1) *
                           Rational(reps[j].scale == 2 ? 2 : 1));
      }
      if (v != want) ok = false;
    }
  // theta((A+1)*1 * (A+1)*1) = (A+1)^2 * theta(empty) = (A+1)^2.
  {
    LaurentPoly hv = theta(reps[0].p * reps[0].p);
    if (hv != aplus1_pow(2)) ok = false;
    g.entries[0][0] = hv;
  }

  // Residues of the six families at representative index patterns.
  if (b >= 2) {
    auto diag = [&](int i) { return FormalProduct::from_element(basis_pair(i, i, b)); };
    ok = ok && residue_mod(theta(diag(1) * diag(1)), 3) == aplus1_pow(2).scaled(Rational(240));
    ok = ok && residue_mod(theta(diag(1) * diag(2)), 3) == aplus1_pow(2).scaled(Rational(144));
    auto pr = [&](int i, int j) { return FormalProduct::from_element(basis_pair(i, j, b)); };
    ok = ok && residue_mod(theta(pr(1, 2) * diag(1)), 3).is_zero();
    ok = ok && residue_mod(theta(pr(1, 2) * pr(1, 2)), 3) == aplus1_pow(2).scaled(Rational(48));
    if (b >= 4) ok = ok && residue_mod(theta(pr(1, 2) * pr(3, 4)), 3).is_zero();
    if (b >= 3) {
      ok = ok && residue_mod(theta(pr(1, 2) * pr(2, 3)), 3).is_zero();
      auto tri = [&](int i, int j, int k) {
        return FormalProduct::from_element(basis_triple(i, j, k, b));
      };
      ok = ok && residue_mod(theta(tri(1, 2, 3) * diag(1)), 4).is_zero();
      ok = ok && residue_mod(theta(tri(1, 2, 3) * pr(1, 2)), 3).is_zero();
      ok = ok && residue_mod(theta(tri(1, 2, 3) * tri(1, 2, 3)), 4) ==
                     aplus1_pow(3).scaled(Rational(192));
      if (b >= 4)
        ok = ok && residue_mod(theta(tri(1, 2, 3) * tri(2, 3, 4)), 4).is_zero();
      if (b >= 6)
        ok = ok && residue_mod(theta(tri(1, 2, 3) * tri(4, 5, 6)), 4).is_zero();
    }
  }
  g.table_ok = ok;

  // Independence verdict: the quadratic-form argument on random vectors.
  std::mt19937 rng(seed);
  auto rnd = [&]() { return Rational((int)(rng() % 11) - 5); };
  bool indep = true;
  for (int trial = 0; trial < 12 && indep; ++trial) {
    Rational q = rnd();
    std::map<int, Rational> qi;
    std::map<std::pair<int, int>, Rational> qij;
    std::map<std::array<int, 3>, Rational> qijk;
    for (int i = 1; i <= b; ++i) qi[i] = rnd();
    for (int i = 1; i <= b; ++i)
      for (int j = i + 1; j <= b; ++j) qij[{i, j}] = rnd();
    for (int i = 1; i <= b; ++i)
      for (int j = i + 1; j <= b; ++j)
        for (int k = j + 1; k <= b; ++k) qijk[{i, j, k}] = rnd();

    FormalProduct X = FormalProduct::from_element(
        SkeinElement::unit(b).scaled(LaurentPoly::h().scaled(q)));
    for (auto& [i, c] : qi) {
      // <i,i> - 12(A+1): the shift orthogonalizes against the scalar.
      SkeinElement e = basis_pair(i, i, b) -
                       SkeinElement::unit(b).scaled(LaurentPoly::h().scaled(Rational(12)));
      X = X + FormalProduct::from_element(e.scaled(LaurentPoly(c)));
    }
    for (auto& [ij, c] : qij)
      X = X + FormalProduct::from_element(
                  basis_pair(ij.first, ij.second, b).scaled(LaurentPoly(c)));
    for (auto& [t, c] : qijk)
      X = X + FormalProduct::from_element(
                  basis_triple(t[0], t[1], t[2], b).scaled(LaurentPoly(c)));

    auto jet = theta(X * X).jet_minus1(3);
    if (jet[0] != 0 || jet[1] != 0) {
      indep = false;
      break;
    }
    Rational want2 = q * q;
    for (auto& [i, c] : qi) want2 += Rational(96) * c * c;
    for (auto& [ij, c] : qij) want2 += Rational(48) * c * c;
    if (jet[2] != want2) {
      indep = false;
      break;
    }
    // When the degree-2 part vanishes, the next coefficient isolates triples.
    bool deg2zero = (q == 0);
    for (auto& [i, c] : qi) deg2zero = deg2zero && c == 0;
    for (auto& [ij, c] : qij) deg2zero = deg2zero && c == 0;
    if (deg2zero) {
      Rational want3(0);
      for (auto& [t, c] : qijk) want3 += Rational(192) * c * c;
      if (jet[3] != want3) indep = false;
    }
  }
  // Also check the triple layer directly with a zero degree-2 part.
  if (indep && b >= 3) {
    FormalProduct X = FormalProduct::from_element(
        basis_triple(1, 2, 3, b).scaled(LaurentPoly(Rational(2))));
    if (b >= 4)
      X = X + FormalProduct::from_element(
                  basis_triple(2, 3, 4, b).scaled(LaurentPoly(Rational(-3))));
    auto jet = theta(X * X).jet_minus1(3);
    Rational want = Rational(192) * 4 + (b >= 4 ? Rational(192) * 9 : Rational(0));
    if (jet[0] != 0 || jet[1] != 0 || jet[2] != 0 || jet[3] != want) indep = false;
  }
  g.independent = indep;
  return g;
}

nlohmann::json GramResult::to_json() const {
  nlohmann::json j;
  j["b"] = b;
  j["labels"] = labels;
  j["table_ok"] = table_ok;
  j["independent"] = independent;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : entries) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : row) r.push_back(e.str());
    rows.push_back(r);
  }
  j["entries"] = rows;
  return j;
}

std::string GramResult::to_csv() const {
  std::ostringstream os;
  os << "label";
  for (const auto& l : labels) os << "," << l;
  os << "\n";
  for (size_t i = 0; i < entries.size(); ++i) {
    os << labels[i];
    for (const auto& e : entries[i]) os << ",\"" << e.str() << "\"";
    os << "\n";
  }
  os << "table_ok," << (table_ok ? "true" : "false") << "\n";
  os << "independent," << (independent ? "true" : "false") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// ev and certificates
// ---------------------------------------------------------------------------

LaurentPoly ev(const Multicurve& L, const FormalProduct& x, int n, int m) {
  FormalProduct lk = FormalProduct::from_element(curve(L));
  size_t comps = L.comps().size();
  Rational norm(1);
  for (size_t i = 0; i < comps; ++i) norm /= -2;
  LaurentPoly v = theta(lk * x).scaled(norm);
  auto val = v.val_aplus1();
  if (val.has_value() && *val < n)
    throw InsufficientValuation("evaluation has (A+1)-valuation below the claim");
  auto jet = v.jet_minus1(n + m - 1);
  LaurentPoly out;
  for (int t = 0; t < m; ++t) out += aplus1_pow(t).scaled(jet[n + t]);
  return out;
}

Certificate divisibility_certificate(
    const FormalProduct& x, int n,
    const std::vector<std::pair<std::string, std::pair<FormalProduct, int>>>& tests) {
  Certificate c;
  c.claimed_degree = n;
  c.consistent = true;
  for (const auto& [id, ty] : tests) {
    const auto& [y, m] = ty;
    LaurentPoly v = theta(x * y);
    Certificate::Entry e;
    e.id = id;
    e.required = (n + m + 1) / 2;
    auto val = v.val_aplus1();
    if (val.has_value())
      e.observed = *val;
    else
      e.observed = std::nullopt;  // zero polynomial: infinite valuation
    e.ok = !e.observed.has_value() || *e.observed >= e.required;
    if (!e.ok) c.consistent = false;
    c.entries.push_back(std::move(e));
  }
  return c;
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json j;
  j["claimed_degree"] = claimed_degree;
  j["verdict"] = consistent ? "consistent" : "refuted";
  j["note"] = "necessary condition only: a consistent verdict does not prove membership";
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["id"] = e.id;
    je["required"] = e.required;
    if (e.observed.has_value())
      je["observed"] = *e.observed;
    else
      je["observed"] = "infinity";
    je["ok"] = e.ok;
    es.push_back(je);
  }
  j["tests"] = es;
  return j;
}

std::string Certificate::to_csv() const {
  std::ostringstream os;
  os << "id,required,observed,ok\n";
  for (const auto& e : entries) {
    os << e.id << "," << e.required << ",";
    if (e.observed.has_value())
      os << *e.observed;
    else
      os << "inf";
    os << "," << (e.ok ? "true" : "false") << "\n";
  }
  os << "verdict," << (consistent ? "consistent" : "refuted") << ",,\n";
  return os.str();
}

}  // namespace skein
