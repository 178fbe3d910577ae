#include "skein/geom.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "skein/errors.hpp"

#include <nlohmann/json.hpp>

namespace skein {

namespace {

Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return sgn(cross(sub(b, a), sub(c, a)));
}

// ---------------------------------------------------------------------------
// SubsetCurve
// ---------------------------------------------------------------------------

SubsetCurve SubsetCurve::of(std::initializer_list<int> punctures) {
  uint64_t m = 0;
  for (int i : punctures) m |= uint64_t(1) << (i - 1);
  return SubsetCurve(m);
}

int SubsetCurve::size() const { return __builtin_popcountll(m_); }

int SubsetCurve::min() const {
  if (m_ == 0) throw InvariantViolation("empty subset curve");
  return __builtin_ctzll(m_) + 1;
}

int SubsetCurve::max() const {
  if (m_ == 0) throw InvariantViolation("empty subset curve");
  return 64 - __builtin_clzll(m_);
}

std::vector<int> SubsetCurve::punctures() const {
  std::vector<int> out;
  for (int i = min(); i <= max(); ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Multicurve
// ---------------------------------------------------------------------------

namespace {

// Two subset curves can be drawn disjointly in standard position iff their
// supports are nested, or are disjoint with nested or disjoint hulls.
bool compatible(const SubsetCurve& s, const SubsetCurve& t) {
  if (s.subset_of(t) || t.subset_of(s)) return true;
  if (!s.disjoint(t)) return false;
  if (s.max() < t.min() || t.max() < s.min()) return true;        // disjoint hulls
  if (s.min() < t.min() && t.max() < s.max()) return true;        // t inside s
  if (t.min() < s.min() && s.max() < t.max()) return true;        // s inside t
  return false;
}

}  // namespace

Multicurve::Multicurve(std::vector<SubsetCurve> comps, int b) : c_(std::move(comps)), b_(b) {
  for (const auto& s : c_) {
    if (s.mask() == 0) throw InvariantViolation("empty component in multicurve");
    if (b < 1 || b > 62 || s.max() > b) throw InvariantViolation("puncture out of range");
  }
  std::sort(c_.begin(), c_.end());
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = i + 1; j < c_.size(); ++j)
      if (!compatible(c_[i], c_[j]))
        throw InvariantViolation("multicurve components not disjointly realizable");
}

bool Multicurve::operator<(const Multicurve& o) const {
  return c_ < o.c_;
}

nlohmann::json Multicurve::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : c_) arr.push_back(s.punctures());
  return arr;
}

Multicurve Multicurve::from_json(const nlohmann::json& j, int b) {
  std::vector<SubsetCurve> comps;
  for (const auto& item : j) {
    uint64_t m = 0;
    for (const auto& p : item) m |= uint64_t(1) << (p.get<int>() - 1);
    comps.push_back(SubsetCurve(m));
  }
  return Multicurve(std::move(comps), b);
}

// ---------------------------------------------------------------------------
// Crossing collection / validation
// ---------------------------------------------------------------------------

namespace {

struct Seg {
  Vec2 a, b;
  int strand, idx;  // idx = index of the starting point within the strand
};

std::vector<Seg> all_segments(const Diagram& d) {
  std::vector<Seg> out;
  for (int s = 0; s < (int)d.strands.size(); ++s) {
    const auto& pts = d.strands[s];
    if (pts.size() < 3) throw InvariantViolation("strand with fewer than 3 points");
    int n = (int)pts.size();
    for (int i = 0; i < n; ++i) {
      const Vec2& a = pts[i];
      const Vec2& b = pts[(i + 1) % n];
      if (a == b) throw GeneralPositionFailure("zero-length segment");
      out.push_back({a, b, s, i});
    }
  }
  return out;
}

bool on_segment_closed(const Vec2& p, const Vec2& a, const Vec2& b) {
  if (orient(a, b, p) != 0) return false;
  return dot(sub(p, a), sub(p, b)) <= 0;
}

// Proper interior intersection point of ab and cd, if any.
std::optional<Vec2> proper_intersection(const Vec2& a, const Vec2& b, const Vec2& c,
                                        const Vec2& d) {
  int d1 = orient(c, d, a), d2 = orient(c, d, b);
  int d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (d1 * d2 < 0 && d3 * d4 < 0) {
    Rational den = cross(sub(b, a), sub(d, c));
    Rational t = cross(sub(c, a), sub(d, c)) / den;
    return Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }
  return std::nullopt;
}

// Any contact at all (shared endpoint, endpoint on interior, collinear overlap)?
bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  int d1 = orient(c, d, a), d2 = orient(c, d, b);
  int d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment_closed(a, c, d)) return true;
  if (d2 == 0 && on_segment_closed(b, c, d)) return true;
  if (d3 == 0 && on_segment_closed(c, a, b)) return true;
  if (d4 == 0 && on_segment_closed(d, a, b)) return true;
  return false;
}

}  // namespace

int segment_ray_crossing(const Vec2& a, const Vec2& b, int i) {
  Rational xi(i);
  if (a.x == xi || b.x == xi) throw GeneralPositionFailure("segment endpoint on puncture ray");
  if ((a.x < xi) == (b.x < xi)) return 0;
  Rational y = a.y + (b.y - a.y) * (xi - a.x) / (b.x - a.x);
  if (y == 0) throw GeneralPositionFailure("segment through puncture");
  return y > 0 ? 1 : 0;
}

uint64_t loop_ray_parities(const std::vector<Vec2>& pts, int b) {
  uint64_t mask = 0;
  int n = (int)pts.size();
  for (int i = 1; i <= b; ++i) {
    int c = 0;
    for (int k = 0; k < n; ++k) c += segment_ray_crossing(pts[k], pts[(k + 1) % n], i);
    if (c & 1) mask |= uint64_t(1) << (i - 1);
  }
  return mask;
}

std::vector<Crossing> collect_crossings(const Diagram& d, bool check_rays) {
  auto segs = all_segments(d);
  if (check_rays) {
    for (const auto& s : segs) {
      if (is_integer(s.a.x)) {
        long xv = (long)numerator(s.a.x);
        if (xv >= 1 && xv <= d.b) throw GeneralPositionFailure("vertex on puncture column");
      }
      for (int i = 1; i <= d.b; ++i) segment_ray_crossing(s.a, s.b, i);  // degeneracy check
    }
  }
  std::vector<Crossing> out;
  std::map<Vec2, int> seen;
  for (size_t u = 0; u < segs.size(); ++u) {
    for (size_t v = u + 1; v < segs.size(); ++v) {
      const Seg& p = segs[u];
      const Seg& q = segs[v];
      bool adjacent = false;
      if (p.strand == q.strand) {
        int n = (int)d.strands[p.strand].size();
        int diff = (q.idx - p.idx + n) % n;
        if (diff == 1 || diff == n - 1) adjacent = true;
      }
      if (adjacent) {
        // Consecutive segments share one vertex; forbid backtracking overlap.
        const Vec2 *pr, *mid, *nx;
        int n = (int)d.strands[p.strand].size();
        if ((q.idx - p.idx + n) % n == 1) { pr = &p.a; mid = &p.b; nx = &q.b; }
        else { pr = &q.a; mid = &q.b; nx = &p.b; }
        if (orient(*pr, *mid, *nx) == 0 && dot(sub(*mid, *pr), sub(*nx, *mid)) <= 0)
          throw GeneralPositionFailure("backtracking polyline");
        continue;
      }
      auto ip = proper_intersection(p.a, p.b, q.a, q.b);
      if (ip) {
        if (check_rays && is_integer(ip->x)) {
          long xv = (long)numerator(ip->x);
          if (xv >= 1 && xv <= d.b) throw GeneralPositionFailure("crossing on puncture column");
        }
        if (++seen[*ip] > 1) throw GeneralPositionFailure("triple point");
        // over/under unknown here; caller decorates
        out.push_back({*ip, p.strand, p.idx, q.strand, q.idx});
      } else if (segments_touch(p.a, p.b, q.a, q.b)) {
        throw GeneralPositionFailure("non-transverse contact");
      }
    }
  }
  return out;
}

void validate_diagram(const Diagram& d) {
  auto found = collect_crossings(d);
  if (found.size() != d.crossings.size())
    throw InvariantViolation("crossing count mismatch");
  std::map<Vec2, const Crossing*> declared;
  for (const auto& c : d.crossings) declared[c.p] = &c;
  if (declared.size() != d.crossings.size())
    throw InvariantViolation("duplicate declared crossing");
  for (const auto& f : found) {
    auto it = declared.find(f.p);
    if (it == declared.end()) throw InvariantViolation("undeclared crossing");
    const Crossing& c = *it->second;
    bool same = (c.s_over == f.s_over && c.seg_over == f.seg_over && c.s_under == f.s_under &&
                 c.seg_under == f.seg_under) ||
                (c.s_over == f.s_under && c.seg_over == f.seg_under && c.s_under == f.s_over &&
                 c.seg_under == f.seg_over);
    if (!same) throw InvariantViolation("crossing branches mismatch");
  }
}

// ---------------------------------------------------------------------------
// Standard realization
// ---------------------------------------------------------------------------

namespace {

struct Layout {
  Rational top, bot, dipLo, dipHi, phi;
};

const Rational kMu(1, 5);

std::vector<Vec2> subset_polygon(const SubsetCurve& s, const Layout& L) {
  int mn = s.min(), mx = s.max();
  std::vector<Vec2> pts;
  Rational half(1, 2);
  pts.push_back({Rational(mn) - L.phi, L.top});
  for (int i = mn; i <= mx; ++i) {
    Rational t = s.contains(i) ? L.top : L.dipHi;
    if (i > mn) pts.push_back({Rational(i) - kMu, t});
    if (i < mx) {
      pts.push_back({Rational(i) + kMu, t});
      Rational tg = (s.contains(i) && s.contains(i + 1)) ? L.top : L.dipHi;
      pts.push_back({Rational(i) + half, tg});
    }
  }
  pts.push_back({Rational(mx) + L.phi, L.top});
  pts.push_back({Rational(mx) + L.phi, L.bot});
  for (int i = mx; i >= mn; --i) {
    Rational bt = s.contains(i) ? L.bot : L.dipLo;
    if (i < mx) pts.push_back({Rational(i) + kMu, bt});
    if (i > mn) {
      pts.push_back({Rational(i) - kMu, bt});
      Rational bg = (s.contains(i) && s.contains(i - 1)) ? L.bot : L.dipLo;
      pts.push_back({Rational(i) - half, bg});
    }
  }
  pts.push_back({Rational(mn) - L.phi, L.bot});
  // Drop redundant collinear vertices.
  std::vector<Vec2> out;
  int n = (int)pts.size();
  for (int i = 0; i < n; ++i) {
    const Vec2& prev = pts[(i + n - 1) % n];
    const Vec2& cur = pts[i];
    const Vec2& next = pts[(i + 1) % n];
    if (orient(prev, cur, next) == 0 && dot(sub(cur, prev), sub(next, cur)) > 0) continue;
    out.push_back(cur);
  }
  return out;
}

// Component order: wider hulls first, then larger supports, then leftmost,
// then by mask, keeping the layout deterministic.
std::vector<int> priority_order(const std::vector<SubsetCurve>& comps) {
  std::vector<int> order(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) order[i] = (int)i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const SubsetCurve &s = comps[a], &t = comps[b];
    if (s.span() != t.span()) return s.span() > t.span();
    if (s.size() != t.size()) return s.size() > t.size();
    if (s.min() != t.min()) return s.min() < t.min();
    if (s.mask() != t.mask()) return s.mask() < t.mask();
    return a < b;
  });
  return order;
}

std::vector<Layout> laminar_layouts(const std::vector<SubsetCurve>& comps,
                                    const std::vector<int>& order) {
  int n = (int)comps.size();
  std::vector<Layout> L(n);
  Rational half(1, 2);
  for (int r = 0; r < n; ++r) {
    int ci = order[r];
    const SubsetCurve& c = comps[ci];
    int parent = -1;
    Rational floorHi;  // highest band top among hosts
    bool hasFloor = false;
    for (int rp = 0; rp < r; ++rp) {
      int pi = order[rp];
      const SubsetCurve& p = comps[pi];
      if (c.subset_of(p)) parent = pi;  // last (innermost) wins
      if (c.disjoint(p) && p.min() < c.min() && c.max() < p.max()) {
        if (!hasFloor || L[pi].dipHi > floorHi) floorHi = L[pi].dipHi;
        hasFloor = true;
      }
    }
    Rational bandLo = parent >= 0 ? L[parent].dipLo : -half;
    Rational bandHi = parent >= 0 ? L[parent].dipHi : Rational(0);
    Rational lb = parent >= 0 ? L[parent].bot : -half;
    if (hasFloor) {
      if (floorHi > bandLo) bandLo = floorHi;
      if (floorHi > lb) lb = floorHi;
    }
    L[ci].dipLo = bandLo + (bandHi - bandLo) * Rational(2, 5);
    L[ci].dipHi = bandLo + (bandHi - bandLo) * Rational(3, 5);
    L[ci].bot = lb + (L[ci].dipLo - lb) / 4;
    L[ci].top = (parent >= 0 ? L[parent].top : half) * Rational(3, 4);
    // Caps sit strictly inside the flat strip (col - mu, col), nested by rank.
    L[ci].phi = kMu * Rational(2 * n + 1 - r, 2 * n + 2);
  }
  return L;
}

}  // namespace

Diagram realize(const Multicurve& m, int b) {
  Diagram d;
  d.b = b;
  const auto& comps = m.comps();
  if (comps.empty()) return d;
  auto order = priority_order(comps);
  auto layouts = laminar_layouts(comps, order);
  for (size_t i = 0; i < comps.size(); ++i)
    d.strands.push_back(subset_polygon(comps[i], layouts[i]));
  auto found = collect_crossings(d);
  if (!found.empty()) throw InvariantViolation("standard realization has crossings");
  for (size_t i = 0; i < comps.size(); ++i)
    if (loop_ray_parities(d.strands[i], b) != comps[i].mask())
      throw InvariantViolation("realization parity mismatch");
  return d;
}

// ---------------------------------------------------------------------------
// Stacking
// ---------------------------------------------------------------------------

Diagram stack(const Diagram& top, const Diagram& bottom) {
  if (top.b != bottom.b) throw InvariantViolation("stack: puncture count mismatch");
  int nTop = (int)top.strands.size();
  for (int attempt = 0; attempt < 60; ++attempt) {
    Rational s(64 + attempt, 65 + attempt);
    Rational dx(1, 977 + 31 * attempt);
    auto xf = [&](const Vec2& v) { return Vec2{v.x + dx, v.y * s}; };
    Diagram d;
    d.b = top.b;
    d.strands = top.strands;
    for (const auto& st : bottom.strands) {
      std::vector<Vec2> pts;
      for (const auto& v : st) pts.push_back(xf(v));
      d.strands.push_back(std::move(pts));
    }
    std::vector<Crossing> found;
    try {
      found = collect_crossings(d);
    } catch (const GeneralPositionFailure&) {
      continue;
    }
    // Parities of the nudged bottom strands must be unchanged.
    bool ok = true;
    for (size_t i = 0; i < bottom.strands.size(); ++i) {
      if (loop_ray_parities(d.strands[nTop + i], d.b) !=
          loop_ray_parities(bottom.strands[i], d.b)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::map<Vec2, Crossing> declared;
    for (const auto& c : top.crossings) declared[c.p] = c;
    for (const auto& c : bottom.crossings) {
      Crossing t = c;
      t.p = xf(t.p);
      t.s_over += nTop;
      t.s_under += nTop;
      declared[t.p] = t;
    }
    bool bad = false;
    for (auto& f : found) {
      bool aTop = f.s_over < nTop, bTop = f.s_under < nTop;
      if (aTop != bTop) {
        if (!aTop) {  // ensure the over slot holds the top-part branch
          std::swap(f.s_over, f.s_under);
          std::swap(f.seg_over, f.seg_under);
        }
      } else {
        auto it = declared.find(f.p);
        if (it == declared.end()) { bad = true; break; }
        f = it->second;
        declared.erase(it);
      }
      d.crossings.push_back(f);
    }
    if (bad) throw InvariantViolation("stack: internal crossing not preserved");
    for (const auto& kv : declared) {
      (void)kv;
      throw InvariantViolation("stack: declared crossing lost");
    }
    validate_diagram(d);
    return d;
  }
  throw GeneralPositionFailure("stack: no perturbation reached general position");
}

// ---------------------------------------------------------------------------
// Decoration records and re-matching
// ---------------------------------------------------------------------------

namespace {

struct DecoRecord {
  Vec2 p;
  Vec2 overA, overB;  // endpoints of the over branch
};

Diagram finalize_with_decorations(int b, std::vector<std::vector<Vec2>> strands,
                                  const std::vector<DecoRecord>& records) {
  Diagram d;
  d.b = b;
  d.strands = std::move(strands);
  auto found = collect_crossings(d);
  std::map<Vec2, DecoRecord> byPoint;
  for (const auto& r : records) byPoint[r.p] = r;
  if (byPoint.size() != records.size())
    throw InvariantViolation("duplicate decoration point");
  if (found.size() != records.size())
    throw InvariantViolation("crossing census mismatch");
  for (auto& f : found) {
    auto it = byPoint.find(f.p);
    if (it == byPoint.end()) throw InvariantViolation("unexpected crossing");
    const DecoRecord& r = it->second;
    auto endpoints = [&](int s, int i, Vec2& a, Vec2& b2) {
      const auto& pts = d.strands[s];
      a = pts[i];
      b2 = pts[(i + 1) % pts.size()];
    };
    Vec2 a1, b1, a2, b2;
    endpoints(f.s_over, f.seg_over, a1, b1);
    endpoints(f.s_under, f.seg_under, a2, b2);
    // The over branch may have been subdivided since the record was taken,
    // so accept any subsegment of the recorded branch.
    auto on_record = [&](const Vec2& v) {
      if (orient(r.overA, r.overB, v) != 0) return false;
      Rational lox = r.overA.x < r.overB.x ? r.overA.x : r.overB.x;
      Rational hix = r.overA.x < r.overB.x ? r.overB.x : r.overA.x;
      Rational loy = r.overA.y < r.overB.y ? r.overA.y : r.overB.y;
      Rational hiy = r.overA.y < r.overB.y ? r.overB.y : r.overA.y;
      return lox <= v.x && v.x <= hix && loy <= v.y && v.y <= hiy;
    };
    auto match = [&](const Vec2& a, const Vec2& b3) {
      return on_record(a) && on_record(b3);
    };
    if (match(a2, b2)) {
      std::swap(f.s_over, f.s_under);
      std::swap(f.seg_over, f.seg_under);
    } else if (!match(a1, b1)) {
      throw InvariantViolation("decoration does not match either branch");
    }
    d.crossings.push_back(f);
  }
  validate_diagram(d);
  return d;
}

std::vector<DecoRecord> existing_records(const Diagram& d) {
  std::vector<DecoRecord> out;
  for (const auto& c : d.crossings) {
    const auto& pts = d.strands[c.s_over];
    out.push_back({c.p, pts[c.seg_over], pts[(c.seg_over + 1) % pts.size()]});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ray twists
// ---------------------------------------------------------------------------

Diagram insert_ray_twist(const Diagram& d, int i, int sign) {
  if (sign != 1 && sign != -1) throw InvariantViolation("twist sign must be +-1");
  struct Passage {
    int strand, seg;
    bool l2r;
    Rational y;
  };
  std::vector<Passage> ps;
  Rational xi(i);
  for (int s = 0; s < (int)d.strands.size(); ++s) {
    const auto& pts = d.strands[s];
    int n = (int)pts.size();
    for (int k = 0; k < n; ++k) {
      const Vec2 &a = pts[k], &b = pts[(k + 1) % n];
      if (segment_ray_crossing(a, b, i)) {
        if (a.y != b.y) throw GeneralPositionFailure("ray strand not horizontal at twist");
        ps.push_back({s, k, a.x < b.x, a.y});
      }
    }
  }
  if (ps.empty()) return d;
  std::sort(ps.begin(), ps.end(),
            [](const Passage& a, const Passage& b) { return a.y < b.y; });
  for (size_t k = 0; k + 1 < ps.size(); ++k)
    if (ps[k].y == ps[k + 1].y) throw GeneralPositionFailure("coincident cable heights");
  int n = (int)ps.size();

  for (int attempt = 0; attempt < 40; ++attempt) {
    Rational w(1, 16);
    Rational wr = w + Rational(1, 256 + attempt);
    Rational xl = xi - w, xr = xi + wr;
    // Each cable segment must span the whole band.
    for (const auto& p : ps) {
      const auto& pts = d.strands[p.strand];
      const Vec2 &a = pts[p.seg], &b = pts[(p.seg + 1) % pts.size()];
      Rational lo = a.x < b.x ? a.x : b.x, hi = a.x < b.x ? b.x : a.x;
      if (lo >= xl || hi <= xr) throw GeneralPositionFailure("cable segment too short");
    }
    std::vector<std::vector<Vec2>> inner(n);  // interior vertices, left to right
    std::vector<DecoRecord> newRecs;
    bool retry = false;

    if (n == 1) {
      // A curl: horizontal run with a small loop hooked under it.
      Rational y = ps[0].y;
      Rational x1 = xi - Rational(1, 32), x2 = xi + Rational(1, 32), x3 = xi + Rational(3, 64);
      Rational yT = y * Rational(3, 2), yB = y / 2;
      inner[0] = {{xl, y}, {x2, y}, {x2, yT}, {x1, yT}, {x1, yB}, {x3, yB}, {xr, y}};
      Vec2 cp{x1, y};
      // Positive twist: the horizontal run passes over the descending branch.
      if (sign > 0)
        newRecs.push_back({cp, {xl, y}, {x2, y}});
      else
        newRecs.push_back({cp, {x1, yT}, {x1, yB}});
    } else {
      int m = n * (n - 1);
      std::vector<Rational> lane(n);
      for (int k = 0; k < n; ++k) lane[k] = ps[k].y;
      std::vector<Rational> bx(m + 1);
      for (int t = 0; t <= m; ++t) bx[t] = xl + (xr - xl) * Rational(t, m);
      std::vector<int> cur(n);
      for (int k = 0; k < n; ++k) cur[k] = k;
      for (int k = 0; k < n; ++k) inner[k].push_back({xl, lane[k]});
      int t = 0;
      for (int rep = 0; rep < n && !retry; ++rep) {
        for (int k = 0; k + 1 < n && !retry; ++k, ++t) {
          int a = cur[k], bb = cur[k + 1];
          inner[a].push_back({bx[t], lane[k]});
          inner[a].push_back({bx[t + 1], lane[k + 1]});
          inner[bb].push_back({bx[t], lane[k + 1]});
          inner[bb].push_back({bx[t + 1], lane[k]});
          std::swap(cur[k], cur[k + 1]);
          Vec2 cp{(bx[t] + bx[t + 1]) / 2, (lane[k] + lane[k + 1]) / 2};
          if (is_integer(cp.x)) { retry = true; break; }
          // Positive twist: the ascending strand passes over, which matches
          // the chirality of the single-strand curl above (a lone +1 curl
          // contributes the same factor as a 1-cable of the full twist).
          if (sign > 0)
            newRecs.push_back({cp, {bx[t], lane[k]}, {bx[t + 1], lane[k + 1]}});
          else
            newRecs.push_back({cp, {bx[t], lane[k + 1]}, {bx[t + 1], lane[k]}});
        }
      }
      if (retry) continue;
      for (int k = 0; k < n; ++k) {
        if (cur[k] != k) throw InvariantViolation("full twist is not a pure braid");
        inner[k].push_back({xr, lane[k]});
      }
      // Deduplicate consecutive equal points (strand idle between letters).
      for (auto& path : inner) {
        std::vector<Vec2> ded;
        for (const auto& v : path)
          if (ded.empty() || !(ded.back() == v)) ded.push_back(v);
        path = ded;
      }
    }

    // Rebuild strands, splicing the cable paths into the flagged segments.
    std::vector<std::vector<Vec2>> strands = d.strands;
    // Group passages by strand; rebuild each affected strand once.
    std::map<int, std::vector<int>> byStrand;
    for (int k = 0; k < n; ++k) byStrand[ps[k].strand].push_back(k);
    for (const auto& [sIdx, list] : byStrand) {
      const auto& pts = d.strands[sIdx];
      int np = (int)pts.size();
      std::map<int, int> segToPassage;
      for (int k : list) segToPassage[ps[k].seg] = k;
      std::vector<Vec2> rebuilt;
      for (int j = 0; j < np; ++j) {
        rebuilt.push_back(pts[j]);
        auto it = segToPassage.find(j);
        if (it != segToPassage.end()) {
          auto path = inner[it->second];
          if (!ps[it->second].l2r) std::reverse(path.begin(), path.end());
          for (const auto& v : path) rebuilt.push_back(v);
        }
      }
      strands[sIdx] = rebuilt;
    }
    auto records = existing_records(d);
    for (const auto& r : newRecs) records.push_back(r);
    try {
      return finalize_with_decorations(d.b, strands, records);
    } catch (const GeneralPositionFailure&) {
      continue;
    }
  }
  throw GeneralPositionFailure("insert_ray_twist: no band placement worked");
}

// ---------------------------------------------------------------------------
// Dehn surgery
// ---------------------------------------------------------------------------

namespace {

// All proper intersections of segment ab with a closed polygon, as
// (parameter along ab, edge index, point), sorted by parameter.
struct PolyHit {
  Rational t;
  int edge;
  Vec2 p;
};

std::vector<PolyHit> segment_polygon_hits(const Vec2& a, const Vec2& b,
                                          const std::vector<Vec2>& poly) {
  std::vector<PolyHit> hits;
  int n = (int)poly.size();
  for (int e = 0; e < n; ++e) {
    const Vec2 &c = poly[e], &dd = poly[(e + 1) % n];
    auto ip = proper_intersection(a, b, c, dd);
    if (ip) {
      Rational t = (b.x != a.x) ? (ip->x - a.x) / (b.x - a.x) : (ip->y - a.y) / (b.y - a.y);
      hits.push_back({t, e, *ip});
    } else if (segments_touch(a, b, c, dd)) {
      throw GeneralPositionFailure("degenerate contact with collar copy");
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const PolyHit& x, const PolyHit& y) { return x.t < y.t; });
  return hits;
}

}  // namespace

Diagram dehn_surgery(const Diagram& d, const SubsetCurve& s, int sign) {
  if (sign != 1 && sign != -1) throw InvariantViolation("twist sign must be +-1");
  int b = d.b;
  Multicurve core({s}, b);

  for (int attempt = 0; attempt < 30; ++attempt) {
    Rational jx(1, 1021 + 101 * attempt);
    // Shrink the collar's vertical extents slightly so its levels never
    // coincide with levels already present in d.
    Rational fy = Rational(1) - Rational(1, 512 + 97 * attempt);
    Layout base;
    {
      // Single-component standard layout constants.
      std::vector<SubsetCurve> comps{s};
      auto order = priority_order(comps);
      base = laminar_layouts(comps, order)[0];
      base.top *= fy;
      base.bot *= fy;
      base.dipLo *= fy;
      base.dipHi *= fy;
    }
    auto shift = [&](std::vector<Vec2> poly) {
      for (auto& v : poly) v.x += jx;
      return poly;
    };
    // Count passages against the shifted core.
    std::vector<Vec2> corePoly = shift(subset_polygon(s, base));
    int n = 0;
    bool fail = false;
    try {
      for (const auto& st : d.strands) {
        int np = (int)st.size();
        for (int k = 0; k < np; ++k)
          n += (int)segment_polygon_hits(st[k], st[(k + 1) % np], corePoly).size();
      }
    } catch (const GeneralPositionFailure&) {
      fail = true;
    }
    if (fail) continue;
    if (n == 0) return d;

    int K = 2 * n + 3;
    // Base epsilon keeps every copy inside the legal layout ranges.
    Rational eps = Rational(1, 40 * (n + 2));
    for (int h = 0; h < attempt; ++h) eps /= 2;
    std::vector<std::vector<Vec2>> copies(K);
    {
      bool bad = false;
      for (int l = 0; l < K && !bad; ++l) {
        Rational delta = Rational(n + 1 - l) * eps;
        Layout L;
        L.top = base.top + delta;
        L.bot = base.bot - delta;
        L.dipLo = base.dipLo - delta;
        L.dipHi = base.dipHi + delta;
        L.phi = base.phi + delta;
        if (!(L.bot < L.dipLo && L.dipLo < L.dipHi && L.dipHi < 0 && L.top > 0 &&
              L.top < Rational(1, 2) && L.bot > Rational(-1, 2) && L.phi > 0 &&
              L.phi < Rational(1, 2) && L.phi != kMu))
          bad = true;
        else
          copies[l] = shift(subset_polygon(s, L));
      }
      if (bad) continue;
    }

    // Runs: maximal monotone sweeps of a segment through all K copies.
    struct Run {
      int strand, seg;
      Rational t0, t1;            // parameter interval on the original segment
      std::vector<PolyHit> hit;   // hit[l] on copy l
    };
    std::vector<Run> runs;
    bool ok = true;
    try {
      for (int st = 0; st < (int)d.strands.size() && ok; ++st) {
        const auto& pts = d.strands[st];
        int np = (int)pts.size();
        for (int k = 0; k < np && ok; ++k) {
          const Vec2 &a = pts[k], &bb = pts[(k + 1) % np];
          struct Tagged { Rational t; int copy; PolyHit h; };
          std::vector<Tagged> all;
          for (int l = 0; l < K; ++l)
            for (const auto& h : segment_polygon_hits(a, bb, copies[l]))
              all.push_back({h.t, l, h});
          std::sort(all.begin(), all.end(),
                    [](const Tagged& x, const Tagged& y) { return x.t < y.t; });
          size_t u = 0;
          while (u < all.size()) {
            if (all.size() - u < (size_t)K) { ok = false; break; }
            bool inward = all[u].copy == 0;
            Run run;
            run.strand = st;
            run.seg = k;
            run.hit.resize(K);
            for (int l = 0; l < K; ++l) {
              int want = inward ? l : K - 1 - l;
              if (all[u + l].copy != want) { ok = false; break; }
              run.hit[want] = all[u + l].h;
            }
            if (!ok) break;
            run.t0 = all[u].t;
            run.t1 = all[u + K - 1].t;
            runs.push_back(run);
            u += K;
          }
        }
      }
    } catch (const GeneralPositionFailure&) {
      ok = false;
    }
    if (!ok || (int)runs.size() != n) continue;

    // Existing decorated crossings must lie outside every replaced shell.
    // (They are re-matched by point after the rebuild; a vanished point throws.)

    // Build the rerouted strands.  Passage j loops along copy 2j+1 and
    // resumes on copy 2j+2.
    std::sort(runs.begin(), runs.end(), [](const Run& x, const Run& y) {
      if (x.strand != y.strand) return x.strand < y.strand;
      if (x.seg != y.seg) return x.seg < y.seg;
      return x.t0 < y.t0;
    });
    struct Insert {
      Rational tq;           // splice position on the original segment
      std::vector<Vec2> path;  // from the loop-copy hit to the resume hit
      int passage;
    };
    std::map<std::pair<int, int>, std::vector<Insert>> inserts;
    for (int j = 0; j < n; ++j) {
      const Run& r = runs[j];
      int lc = 2 * j + 1;
      const PolyHit& q = r.hit[lc];
      const PolyHit& qp = r.hit[lc + 1];
      const auto& poly = copies[lc];
      int V = (int)poly.size();
      std::vector<Vec2> path;
      path.push_back(q.p);
      if (sign > 0) {
        for (int v = 1; v <= V; ++v) path.push_back(poly[(q.edge + v) % V]);
      } else {
        for (int v = 0; v < V; ++v) path.push_back(poly[(q.edge - v + V) % V]);
      }
      path.push_back(qp.p);
      bool forward = q.t < qp.t;
      Insert ins;
      ins.tq = forward ? q.t : qp.t;
      ins.passage = j;
      if (!forward) std::reverse(path.begin(), path.end());
      ins.path = std::move(path);
      inserts[{r.strand, r.seg}].push_back(std::move(ins));
    }

    std::vector<std::vector<Vec2>> strands;
    // For tagging: remember, per final segment, the (strand, original segment)
    // it came from, or the passage id for inserted pieces.
    struct SegTag { int passage; int origStrand, origSeg; };
    std::vector<std::vector<SegTag>> tags;
    for (int st = 0; st < (int)d.strands.size(); ++st) {
      const auto& pts = d.strands[st];
      int np = (int)pts.size();
      std::vector<Vec2> rebuilt;
      std::vector<SegTag> tag;
      for (int k = 0; k < np; ++k) {
        rebuilt.push_back(pts[k]);
        tag.push_back({-1, st, k});
        auto it = inserts.find({st, k});
        if (it != inserts.end()) {
          auto list = it->second;
          std::sort(list.begin(), list.end(),
                    [](const Insert& x, const Insert& y) { return x.tq < y.tq; });
          for (const auto& ins : list) {
            for (size_t v = 0; v < ins.path.size(); ++v) {
              rebuilt.push_back(ins.path[v]);
              // The last inserted point starts a kept sub-segment of the
              // original segment; earlier ones start inserted pieces.
              if (v + 1 < ins.path.size())
                tag.push_back({ins.passage, st, k});
              else
                tag.push_back({-1, st, k});
            }
          }
        }
      }
      strands.push_back(std::move(rebuilt));
      tags.push_back(std::move(tag));
    }

    // Passage lookup for points on kept sub-segments.
    auto passage_at = [&](int origStrand, int origSeg, const Vec2& p) -> int {
      const auto& pts = d.strands[origStrand];
      const Vec2& a = pts[origSeg];
      const Vec2& bb = pts[(origSeg + 1) % pts.size()];
      Rational t = (bb.x != a.x) ? (p.x - a.x) / (bb.x - a.x) : (p.y - a.y) / (bb.y - a.y);
      for (int j = 0; j < n; ++j) {
        const Run& r = runs[j];
        if (r.strand == origStrand && r.seg == origSeg && r.t0 <= t && t <= r.t1) return j;
      }
      return -1;
    };

    Diagram out;
    out.b = b;
    out.strands = strands;
    std::vector<Crossing> found;
    try {
      found = collect_crossings(out);
    } catch (const GeneralPositionFailure&) {
      continue;
    }
    std::map<Vec2, DecoRecord> original;
    for (const auto& r : existing_records(d)) original[r.p] = r;
    size_t matchedOriginal = 0;
    bool bad = false;
    for (auto& f : found) {
      auto orig = original.find(f.p);
      auto segtag = [&](int strand, int seg) { return tags[strand][seg]; };
      if (orig != original.end()) {
        // Same geometric crossing as before the surgery; keep its decoration.
        // Kept pieces are sub-segments of original ones, so match branches by
        // collinearity with the recorded over branch.
        const DecoRecord& r = orig->second;
        auto lies_on_over = [&](int st, int seg) {
          Vec2 a = out.strands[st][seg];
          Vec2 bb = out.strands[st][(seg + 1) % out.strands[st].size()];
          return orient(r.overA, r.overB, a) == 0 && orient(r.overA, r.overB, bb) == 0;
        };
        bool o1 = lies_on_over(f.s_over, f.seg_over);
        bool o2 = lies_on_over(f.s_under, f.seg_under);
        if (o1 == o2) { bad = true; break; }
        if (o2) {
          std::swap(f.s_over, f.s_under);
          std::swap(f.seg_over, f.seg_under);
        }
        ++matchedOriginal;
      } else {
        SegTag t1 = segtag(f.s_over, f.seg_over);
        SegTag t2 = segtag(f.s_under, f.seg_under);
        int p1 = t1.passage >= 0 ? t1.passage : passage_at(t1.origStrand, t1.origSeg, f.p);
        int p2 = t2.passage >= 0 ? t2.passage : passage_at(t2.origStrand, t2.origSeg, f.p);
        if (p1 < 0 || p2 < 0 || p1 == p2) { bad = true; break; }
        // Lower passage index lies entirely over the higher one.
        if (p2 < p1) {
          std::swap(f.s_over, f.s_under);
          std::swap(f.seg_over, f.seg_under);
        }
      }
      out.crossings.push_back(f);
    }
    if (bad || matchedOriginal != d.crossings.size()) continue;
    try {
      validate_diagram(out);
    } catch (const InvariantViolation&) {
      continue;
    }
    return out;
  }
  throw GeneralPositionFailure("dehn_surgery: no collar placement worked");
}

// ---------------------------------------------------------------------------
// Writhe
// ---------------------------------------------------------------------------

long writhe(const Diagram& d) {
  long w = 0;
  for (const auto& c : d.crossings) {
    const auto& po = d.strands[c.s_over];
    const auto& pu = d.strands[c.s_under];
    Vec2 dirO = sub(po[(c.seg_over + 1) % po.size()], po[c.seg_over]);
    Vec2 dirU = sub(pu[(c.seg_under + 1) % pu.size()], pu[c.seg_under]);
    w -= sgn(cross(dirO, dirU));
  }
  return w;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::json Diagram::to_json() const {
  nlohmann::json j;
  j["b"] = b;
  nlohmann::json ss = nlohmann::json::array();
  for (const auto& st : strands) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& v : st)
      pts.push_back({rat_to_string(v.x), rat_to_string(v.y)});
    ss.push_back(pts);
  }
  j["strands"] = ss;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : crossings)
    cs.push_back({c.s_over, c.seg_over, c.s_under, c.seg_under,
                  {rat_to_string(c.p.x), rat_to_string(c.p.y)}});
  j["crossings"] = cs;
  return j;
}

Diagram Diagram::from_json(const nlohmann::json& j) {
  Diagram d;
  d.b = j.at("b").get<int>();
  for (const auto& st : j.at("strands")) {
    std::vector<Vec2> pts;
    for (const auto& v : st)
      pts.push_back({rat_from_string(v.at(0).get<std::string>()),
                     rat_from_string(v.at(1).get<std::string>())});
    d.strands.push_back(std::move(pts));
  }
  for (const auto& c : j.at("crossings")) {
    Crossing cr;
    cr.s_over = c.at(0).get<int>();
    cr.seg_over = c.at(1).get<int>();
    cr.s_under = c.at(2).get<int>();
    cr.seg_under = c.at(3).get<int>();
    cr.p = {rat_from_string(c.at(4).at(0).get<std::string>()),
            rat_from_string(c.at(4).at(1).get<std::string>())};
    d.crossings.push_back(cr);
  }
  validate_diagram(d);
  return d;
}

}  // namespace skein
