#pragma once
#include <cstdint>
#include <vector>

#include "skein/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace skein {

struct Vec2 {
  Rational x, y;
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator<(const Vec2& o) const { return x < o.x || (x == o.x && y < o.y); }
};

// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn, 0 collinear.
int orient(const Vec2& a, const Vec2& b, const Vec2& c);

// A nonempty set of punctures, stored as a bitmask (puncture i <-> bit i-1).
class SubsetCurve {
 public:
  SubsetCurve() : m_(0) {}
  explicit SubsetCurve(uint64_t mask) : m_(mask) {}
  static SubsetCurve of(std::initializer_list<int> punctures);
  uint64_t mask() const { return m_; }
  bool contains(int i) const { return (m_ >> (i - 1)) & 1; }
  int size() const;
  int min() const;  // smallest puncture
  int max() const;  // largest puncture
  int span() const { return max() - min(); }
  bool subset_of(const SubsetCurve& o) const { return (m_ & o.m_) == m_; }
  bool disjoint(const SubsetCurve& o) const { return (m_ & o.m_) == 0; }
  bool operator==(const SubsetCurve& o) const { return m_ == o.m_; }
  bool operator<(const SubsetCurve& o) const { return m_ < o.m_; }
  std::vector<int> punctures() const;

 private:
  uint64_t m_;
};

// A multiset of subset curves that is realizable by disjoint embedded loops:
// every pair of member subsets is nested, or disjoint with non-interleaved
// supports.  Canonically sorted; equal members allowed (multiplicity).
class Multicurve {
 public:
  Multicurve() = default;
  Multicurve(std::vector<SubsetCurve> comps, int b);  // validates
  const std::vector<SubsetCurve>& comps() const { return c_; }
  int b() const { return b_; }
  bool empty() const { return c_.empty(); }
  bool operator==(const Multicurve& o) const { return c_ == o.c_; }
  bool operator<(const Multicurve& o) const;
  nlohmann::json to_json() const;  // [[1],[1,3]]
  static Multicurve from_json(const nlohmann::json& j, int b);

 private:
  std::vector<SubsetCurve> c_;
  int b_ = 0;
};

struct Crossing {
  Vec2 p;
  int s_over, seg_over;  // strand index / segment index of the over branch
  int s_under, seg_under;
};

// A link diagram in the disk with b punctures at (1,0)..(b,0).
// Strands are closed polylines (implicitly closed: last point joins first).
struct Diagram {
  int b = 0;
  std::vector<std::vector<Vec2>> strands;
  std::vector<Crossing> crossings;

  nlohmann::json to_json() const;
  static Diagram from_json(const nlohmann::json& j);
};

// Computes all crossings geometrically and raises GeneralPositionFailure on
// any degeneracy (non-transverse contact, triple point, vertex on a segment,
// vertex or crossing on a puncture ray, overlapping segments).
std::vector<Crossing> collect_crossings(const Diagram& d, bool check_rays = true);

// Checks d.crossings matches the geometric crossings (as unordered sets of
// {point, branch pair}); raises otherwise.
void validate_diagram(const Diagram& d);

// Standard-position realization: disjoint embedded loops, component around S
// bumping over its punctures and dipping below intervening ones.
Diagram realize(const Multicurve& m, int b);

// Places every strand of `top` over every strand of `bottom`; the bottom
// diagram is nudged by a deterministic perturbation schedule until the union
// is in general position.
Diagram stack(const Diagram& top, const Diagram& bottom);

// Inserts a full twist (sign = +-1) on the cable of strands crossing the
// upward ray from puncture i; a single strand receives a curl.
Diagram insert_ray_twist(const Diagram& d, int i, int sign);

// Image of d under the Dehn twist (sign = +-1) along the standard curve
// around s, built by rerouting the strands crossing a thin collar of it.
Diagram dehn_surgery(const Diagram& d, const SubsetCurve& s, int sign);

// Sum of crossing signs (sign of det(over direction, under direction)).
long writhe(const Diagram& d);

// 1 if segment ab crosses the upward ray {x = i, y > 0}, else 0.
// Raises GeneralPositionFailure if an endpoint lies on the ray.
int segment_ray_crossing(const Vec2& a, const Vec2& b, int i);

// Parity bitmask of ray crossings of a closed polyline (bit i-1 for ray i).
uint64_t loop_ray_parities(const std::vector<Vec2>& pts, int b);

}  // namespace skein
