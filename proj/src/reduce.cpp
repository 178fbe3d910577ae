#include "skein/reduce.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "skein/errors.hpp"
#include "skein/quotient.hpp"

#include <nlohmann/json.hpp>

namespace skein {

// ---------------------------------------------------------------------------
// SkeinElement arithmetic and serialization
// ---------------------------------------------------------------------------

SkeinElement& SkeinElement::operator+=(const SkeinElement& o) {
  if (b != o.b) throw InvariantViolation("element puncture count mismatch");
  for (const auto& [k, v] : o.terms) terms[k] += v;
  prune();
  return *this;
}

SkeinElement& SkeinElement::operator-=(const SkeinElement& o) {
  if (b != o.b) throw InvariantViolation("element puncture count mismatch");
  for (const auto& [k, v] : o.terms) terms[k] -= v;
  prune();
  return *this;
}

SkeinElement& SkeinElement::operator*=(const LaurentPoly& c) {
  for (auto& [k, v] : terms) v = v * c;
  prune();
  return *this;
}

SkeinElement SkeinElement::operator+(const SkeinElement& o) const {
  SkeinElement r = *this;
  r += o;
  return r;
}

SkeinElement SkeinElement::operator-(const SkeinElement& o) const {
  SkeinElement r = *this;
  r -= o;
  return r;
}

SkeinElement SkeinElement::operator-() const {
  SkeinElement r = *this;
  for (auto& [k, v] : r.terms) v = -v;
  return r;
}

SkeinElement SkeinElement::scaled(const LaurentPoly& c) const {
  SkeinElement r = *this;
  r *= c;
  return r;
}

bool SkeinElement::operator==(const SkeinElement& o) const {
  SkeinElement a = *this, c = o;
  a.prune();
  c.prune();
  return a.b == c.b && a.terms == c.terms;
}

bool SkeinElement::is_zero() const {
  for (const auto& [k, v] : terms)
    if (!v.is_zero()) return false;
  return true;
}

void SkeinElement::prune() {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
}

nlohmann::json SkeinElement::to_json() const {
  nlohmann::json j;
  j["b"] = b;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, v] : terms)
    arr.push_back({{"curves", k.to_json()}, {"coeff", v.to_json()}});
  j["terms"] = arr;
  return j;
}

SkeinElement SkeinElement::from_json(const nlohmann::json& j) {
  SkeinElement e;
  e.b = j.at("b").get<int>();
  for (const auto& t : j.at("terms"))
    e.terms[Multicurve::from_json(t.at("curves"), e.b)] += LaurentPoly::from_json(t.at("coeff"));
  e.prune();
  return e;
}

// ---------------------------------------------------------------------------
// Resolver
// ---------------------------------------------------------------------------

namespace {

struct Dir {
  Rational x, y;
};

// Counterclockwise angular order starting just above the positive x-axis.
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

using Letter = std::pair<int, int>;  // (puncture, exponent +1/-1)

// Signed upward-ray crossings of one segment, in traversal order.
void segment_letters(const Vec2& a, const Vec2& e, int b, std::vector<Letter>& out) {
  if (a.x == e.x) return;  // vertical segments cannot cross a ray transversally
  bool fwd = a.x < e.x;
  auto visit = [&](int i) {
    Rational xi(i);
    if (a.x == xi || e.x == xi) throw GeneralPositionFailure("segment endpoint on puncture ray");
    if ((a.x < xi) == (e.x < xi)) return;
    Rational y = a.y + (e.y - a.y) * (xi - a.x) / (e.x - a.x);
    if (y == 0) throw GeneralPositionFailure("segment through puncture");
    if (y > 0) out.push_back({i, fwd ? 1 : -1});
  };
  if (fwd)
    for (int i = 1; i <= b; ++i) visit(i);
  else
    for (int i = b; i >= 1; --i) visit(i);
}

std::vector<Letter> path_letters(const std::vector<Vec2>& pts, int b, bool closed) {
  std::vector<Letter> out;
  size_t n = pts.size();
  size_t m = closed ? n : n - 1;
  for (size_t k = 0; k < m; ++k) segment_letters(pts[k], pts[(k + 1) % n], b, out);
  return out;
}

uint64_t letters_parity(const std::vector<Letter>& w) {
  uint64_t mask = 0;
  for (auto [i, e] : w) mask ^= uint64_t(1) << (i - 1);
  return mask;
}

// Free reduction followed by cyclic reduction.
void cyclic_reduce(std::vector<Letter>& w) {
  std::vector<Letter> st;
  for (auto l : w) {
    if (!st.empty() && st.back().first == l.first && st.back().second == -l.second)
      st.pop_back();
    else
      st.push_back(l);
  }
  size_t i = 0, j = st.size();
  while (j >= i + 2 && st[i].first == st[j - 1].first && st[i].second == -st[j - 1].second) {
    ++i;
    --j;
  }
  w.assign(st.begin() + i, st.begin() + j);
}

// Does the cyclically reduced word spell the standard curve of its parity set
// (each enclosed puncture once, consistent direction, monotone cyclic order)?
bool standard_word(const std::vector<Letter>& w, uint64_t mask) {
  size_t want = static_cast<size_t>(std::popcount(mask));
  if (w.size() != want) return false;
  if (w.empty()) return true;
  int sgn = w[0].second;
  uint64_t seen = 0;
  for (auto [i, e] : w) {
    if (e != sgn) return false;
    uint64_t bit = uint64_t(1) << (i - 1);
    if ((seen & bit) || !(mask & bit)) return false;
    seen |= bit;
  }
  // Monotone up to rotation: exactly one descent (ascent for reversed runs).
  int breaks = 0;
  for (size_t k = 0; k < w.size(); ++k) {
    int cur = w[k].first, nxt = w[(k + 1) % w.size()].first;
    if (sgn == 1 ? cur > nxt : cur < nxt) ++breaks;
  }
  return breaks <= 1;
}

GroupWord to_group_word(const std::vector<Letter>& w) {
  GroupWord g;
  g.letters = w;
  return g;
}

}  // namespace

SkeinElement resolve(const Diagram& d) {
  const int b = d.b;
  const int nc = (int)d.crossings.size();

  // Per-crossing geometry: the four branch-end directions in ccw order, and
  // which slots belong to the over branch.
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
    for (int s = 0; s < 4; ++s)
      if (cinfo[c].over[s] == cinfo[c].over[(s + 1) % 4])
        throw InvariantViolation("branches do not alternate at crossing");
  }

  // Split strands into arcs between consecutive crossing points.
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

  struct Arc {
    int c0, slot0, c1, slot1;
    uint64_t parity;
    std::vector<Letter> letters;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<Letter>> freeLoops;  // crossing-free closed strands

  auto slot_of = [&](int c, const Dir& dir) {
    for (int s = 0; s < 4; ++s)
      if (same_ray_dir(cinfo[c].dir[s], dir)) return s;
    throw InvariantViolation("arc end does not match a crossing branch");
  };

  for (int s = 0; s < (int)d.strands.size(); ++s) {
    const auto& pts = d.strands[s];
    int np = (int)pts.size();
    auto& h = hits[s];
    if (h.empty()) {
      freeLoops.push_back(path_letters(pts, b, true));
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
      if (wrap && cnt == 0) cnt = np;  // full revolution
      std::vector<Vec2> path;
      path.push_back(cinfo[from.cross].p);
      for (int j = 1; j <= cnt; ++j) path.push_back(pts[(from.seg + j) % np]);
      path.push_back(cinfo[to.cross].p);
      Arc a;
      a.c0 = from.cross;
      a.c1 = to.cross;
      a.letters = path_letters(path, b, false);
      a.parity = letters_parity(a.letters);
      a.slot0 = slot_of(from.cross, Dir{path[1].x - path[0].x, path[1].y - path[0].y});
      size_t L = path.size();
      a.slot1 = slot_of(to.cross, Dir{path[L - 2].x - path[L - 1].x, path[L - 2].y - path[L - 1].y});
      arcs.push_back(a);
    }
  }

  // Group crossings into connected clusters (joined by arcs); disconnected
  // pieces of the diagram resolve independently.
  std::vector<int> parent(nc);
  for (int c = 0; c < nc; ++c) parent[c] = c;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& a : arcs) parent[find(a.c0)] = find(a.c1);

  // Per-cluster expansion results.
  struct ClusterOut {
    std::map<std::vector<uint64_t>, LaurentPoly> keys;  // sorted parity masks
    SkeinElement corr;   // wrapped-loop corrections, pre-scaled within cluster
    LaurentPoly omega;   // sum of coeff * (-2)^{#components} over states
  };
  std::vector<ClusterOut> clusters;

  const LaurentPoly polyA = LaurentPoly::A();
  const LaurentPoly polyAinv = LaurentPoly::Ainv();
  const LaurentPoly delta = LaurentPoly::loop_value();

  // Classify one closed resolved loop; updates comps / delta count / q.
  auto classify_loop = [&](std::vector<Letter> w, std::vector<uint64_t>& comps, int& ndelta,
                           QuotClass2& q) {
    cyclic_reduce(w);
    uint64_t mask = letters_parity(w);
    if (mask == 0) {
      if (!w.empty())
        throw InvariantViolation("null-parity resolved loop with nontrivial class");
      ++ndelta;
      return;
    }
    comps.push_back(mask);
    if (!standard_word(w, mask)) {
      std::vector<Letter> std_w;
      for (int i = 1; i <= b; ++i)
        if (mask & (uint64_t(1) << (i - 1))) std_w.push_back({i, 1});
      q += word_class(to_group_word(w)) - word_class(to_group_word(std_w));
    }
  };

  // Crossing-free strands: one single-state cluster each.
  for (const auto& w0 : freeLoops) {
    ClusterOut co;
    co.corr = SkeinElement::zero(b);
    std::vector<uint64_t> comps;
    int ndelta = 0;
    QuotClass2 q;
    classify_loop(w0, comps, ndelta, q);
    LaurentPoly coeff(Rational(1));
    for (int t = 0; t < ndelta; ++t) coeff *= delta;
    std::sort(comps.begin(), comps.end());
    co.keys[comps] = coeff;
    Rational pw = 1;
    for (size_t t = 0; t < comps.size(); ++t) pw *= -2;
    co.omega = coeff.scaled(pw);
    if (!q.is_zero()) co.corr = lift_class(q, b).scaled(coeff.scaled(pw / -2));
    clusters.push_back(std::move(co));
  }

  // Crossing clusters: enumerate the Kauffman states of each.
  std::map<int, std::vector<int>> byRoot;
  for (int c = 0; c < nc; ++c) byRoot[find(c)].push_back(c);
  for (const auto& [root, cs] : byRoot) {
    int k = (int)cs.size();
    if (k > 24) throw StabilizationFailure("state sum too large to enumerate");
    std::map<int, int> local;
    for (int i = 0; i < k; ++i) local[cs[i]] = i;
    std::vector<int> arcIdx;
    for (int i = 0; i < (int)arcs.size(); ++i)
      if (find(arcs[i].c0) == root) arcIdx.push_back(i);
    int na = (int)arcIdx.size();
    // end id = local crossing * 4 + slot -> (arc position, which end)
    std::vector<std::pair<int, int>> endArc(4 * k, {-1, -1});
    for (int i = 0; i < na; ++i) {
      const Arc& a = arcs[arcIdx[i]];
      endArc[local[a.c0] * 4 + a.slot0] = {i, 0};
      endArc[local[a.c1] * 4 + a.slot1] = {i, 1};
    }
    for (const auto& e : endArc)
      if (e.first < 0) throw InvariantViolation("unmatched crossing branch");

    ClusterOut co;
    co.corr = SkeinElement::zero(b);
    std::vector<int> mate(4 * k);
    std::vector<char> used(na);
    std::vector<Letter> word;
    for (uint32_t st = 0; st < (1u << k); ++st) {
      int expA = 0;
      for (int i = 0; i < k; ++i) {
        bool useA = (st >> i) & 1;
        expA += useA ? 1 : -1;
        for (int s = 0; s < 4; ++s)
          if (cinfo[cs[i]].over[s]) {
            int t = useA ? (s + 1) % 4 : (s + 3) % 4;
            mate[i * 4 + s] = i * 4 + t;
            mate[i * 4 + t] = i * 4 + s;
          }
      }
      std::fill(used.begin(), used.end(), 0);
      std::vector<uint64_t> comps;
      int ndelta = 0;
      QuotClass2 q;
      for (int i = 0; i < na; ++i) {
        if (used[i]) continue;
        word.clear();
        const Arc& a0 = arcs[arcIdx[i]];
        int startEnd = local[a0.c0] * 4 + a0.slot0;
        int cur = i, side = 1;  // traverse arc i forward, exit at its far end
        while (true) {
          used[cur] = 1;
          const Arc& a = arcs[arcIdx[cur]];
          if (side == 1)
            word.insert(word.end(), a.letters.begin(), a.letters.end());
          else
            for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
              word.push_back({it->first, -it->second});
          int exitEnd = (side == 1) ? local[a.c1] * 4 + a.slot1 : local[a.c0] * 4 + a.slot0;
          int nxt = mate[exitEnd];
          if (nxt == startEnd) break;
          auto [narc, nend] = endArc[nxt];
          cur = narc;
          side = (nend == 0) ? 1 : 0;
        }
        classify_loop(word, comps, ndelta, q);
      }
      LaurentPoly coeff = LaurentPoly::monomial(expA);
      for (int t = 0; t < ndelta; ++t) coeff *= delta;
      std::sort(comps.begin(), comps.end());
      Rational pw = 1;
      for (size_t t = 0; t < comps.size(); ++t) pw *= -2;
      co.keys[comps] += coeff;
      co.omega += coeff.scaled(pw);
      if (!q.is_zero()) co.corr += lift_class(q, b).scaled(coeff.scaled(pw / -2));
    }
    for (auto it = co.keys.begin(); it != co.keys.end();)
      it = it->second.is_zero() ? co.keys.erase(it) : std::next(it);
    clusters.push_back(std::move(co));
  }

  // Combine clusters: tensor the standard keys, weight each cluster's
  // corrections by the (-2)-per-component evaluation of all the others.
  std::map<std::vector<uint64_t>, LaurentPoly> combined;
  combined[{}] = LaurentPoly(Rational(1));
  for (const auto& co : clusters) {
    std::map<std::vector<uint64_t>, LaurentPoly> next;
    for (const auto& [m1, p1] : combined)
      for (const auto& [m2, p2] : co.keys) {
        std::vector<uint64_t> u = m1;
        u.insert(u.end(), m2.begin(), m2.end());
        std::sort(u.begin(), u.end());
        next[u] += p1 * p2;
      }
    combined = std::move(next);
  }
  SkeinElement corr = SkeinElement::zero(b);
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].corr.is_zero()) continue;
    LaurentPoly scale(Rational(1));
    for (size_t j = 0; j < clusters.size(); ++j)
      if (j != i) scale *= clusters[j].omega;
    corr += clusters[i].corr.scaled(scale);
  }

  SkeinElement out = SkeinElement::zero(b);
  for (const auto& [masks, coeff] : combined) {
    std::vector<SubsetCurve> comps;
    for (uint64_t m : masks) comps.push_back(SubsetCurve(m));
    try {
      out.terms[Multicurve(comps, b)] += coeff;
    } catch (const InvariantViolation&) {
      // Disjoint loops whose enclosed sets interleave cannot be keyed by a
      // standard multicurve; substitute an element with the same image in
      // the quotient by the squared augmentation ideal.
      QuotClass2 cls;
      Rational pw = 1;
      for (size_t t = 0; t < comps.size(); ++t) pw *= -2;
      cls.unit = pw;
      for (const auto& s : comps) cls += subset_expand(s).scaled(pw / -2);
      out += lift_class(cls, b).scaled(coeff);
    }
  }
  out += corr;
  out.prune();
  return out;
}

LaurentPoly bracket_disk(const Diagram& d) {
  if (d.b != 0) throw InvariantViolation("bracket_disk requires zero punctures");
  SkeinElement e = resolve(d);
  LaurentPoly r;
  for (const auto& [k, v] : e.terms) {
    if (!k.comps().empty()) throw InvariantViolation("nonempty curve in punctureless disk");
    r += v;
  }
  return r;
}

}  // namespace skein
