#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "skein/errors.hpp"
#include "skein/geom.hpp"

#include <nlohmann/json.hpp>

using namespace skein;

namespace {

struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int uniform(int n) { return (int)(next() % (uint64_t)n); }
};

Multicurve random_multicurve(Rng& rng, int b, int maxComps) {
  std::vector<SubsetCurve> comps;
  int want = rng.uniform(maxComps + 1);
  for (int tries = 0; tries < 50 && (int)comps.size() < want; ++tries) {
    uint64_t m = rng.next() & ((uint64_t(1) << b) - 1);
    if (m == 0) continue;
    std::vector<SubsetCurve> cand = comps;
    cand.push_back(SubsetCurve(m));
    try {
      Multicurve mc(cand, b);
      comps = cand;
    } catch (const InvariantViolation&) {
    }
  }
  return Multicurve(comps, b);
}

}  // namespace

TEST_CASE("subset curve basics") {
  auto s = SubsetCurve::of({2, 5, 3});
  CHECK(s.size() == 3);
  CHECK(s.min() == 2);
  CHECK(s.max() == 5);
  CHECK(s.span() == 3);
  CHECK(s.contains(3));
  CHECK(!s.contains(4));
  CHECK(s.punctures() == std::vector<int>{2, 3, 5});
}

TEST_CASE("multicurve realizability rules") {
  auto mk = [](std::vector<SubsetCurve> v, int b) { return Multicurve(std::move(v), b); };
  CHECK_NOTHROW(mk({SubsetCurve::of({1, 3}), SubsetCurve::of({2})}, 3));
  CHECK_NOTHROW(mk({SubsetCurve::of({1, 4}), SubsetCurve::of({2, 3})}, 4));
  CHECK_NOTHROW(mk({SubsetCurve::of({1, 2}), SubsetCurve::of({3, 4})}, 4));
  CHECK_NOTHROW(mk({SubsetCurve::of({1, 2, 3}), SubsetCurve::of({1, 3})}, 3));
  CHECK_NOTHROW(mk({SubsetCurve::of({1, 3}), SubsetCurve::of({1, 3})}, 3));
  // Interleaved disjoint supports cannot be drawn disjointly.
  CHECK_THROWS_AS(mk({SubsetCurve::of({2, 4}), SubsetCurve::of({3, 6})}, 6),
                  InvariantViolation);
  CHECK_THROWS_AS(mk({SubsetCurve::of({1, 3}), SubsetCurve::of({2, 5})}, 5),
                  InvariantViolation);
  // Overlapping but non-nested supports intersect.
  CHECK_THROWS_AS(mk({SubsetCurve::of({1, 2}), SubsetCurve::of({2, 3})}, 3),
                  InvariantViolation);
  CHECK_THROWS_AS(mk({SubsetCurve::of({4})}, 3), InvariantViolation);
}

TEST_CASE("realize produces disjoint embedded loops with correct parities") {
  // realize() asserts internally: zero crossings and per-component ray
  // parities equal to the component's support.
  Rng rng(0xfeedbeef);
  for (int iter = 0; iter < 120; ++iter) {
    int b = 1 + rng.uniform(6);
    Multicurve m = random_multicurve(rng, b, 5);
    Diagram d = realize(m, b);
    CHECK(d.strands.size() == m.comps().size());
    CHECK(d.crossings.empty());
  }
  // A few structured cases.
  for (auto comps : std::vector<std::vector<SubsetCurve>>{
           {SubsetCurve::of({1, 2, 3}), SubsetCurve::of({1, 3}), SubsetCurve::of({2})},
           {SubsetCurve::of({1, 6}), SubsetCurve::of({2, 4}), SubsetCurve::of({3}),
            SubsetCurve::of({5})},
           {SubsetCurve::of({1, 2}), SubsetCurve::of({1, 2}), SubsetCurve::of({1, 2})},
       }) {
    CHECK_NOTHROW(realize(Multicurve(comps, 6), 6));
  }
}

TEST_CASE("stack puts first diagram over second") {
  Multicurve m1({SubsetCurve::of({1, 2})}, 3);
  Multicurve m2({SubsetCurve::of({2, 3})}, 3);
  Diagram d = stack(realize(m1, 3), realize(m2, 3));
  CHECK(d.strands.size() == 2);
  CHECK(!d.crossings.empty());
  for (const auto& c : d.crossings) {
    CHECK(c.s_over == 0);
    CHECK(c.s_under == 1);
  }
  // Stacking a diagram on a copy of itself works too.
  Diagram dd = stack(d, d);
  CHECK(dd.strands.size() == 4);
  validate_diagram(dd);
}

TEST_CASE("ray twist on a single strand inserts one curl") {
  Diagram d = realize(Multicurve({SubsetCurve::of({1})}, 1), 1);
  Diagram t = insert_ray_twist(d, 1, +1);
  CHECK(t.crossings.size() == 1);
  CHECK(loop_ray_parities(t.strands[0], 1) == loop_ray_parities(d.strands[0], 1));
  CHECK((writhe(t) == 1 || writhe(t) == -1));
  Diagram tm = insert_ray_twist(d, 1, -1);
  CHECK(tm.crossings.size() == 1);
  CHECK(writhe(tm) == -writhe(t));
}

TEST_CASE("ray twist on a cable inserts a full twist braid") {
  Multicurve m({SubsetCurve::of({1}), SubsetCurve::of({1})}, 2);
  Diagram d = realize(m, 2);
  Diagram t = insert_ray_twist(d, 1, +1);
  CHECK(t.crossings.size() == 2);  // n(n-1) with n = 2
  for (size_t i = 0; i < t.strands.size(); ++i)
    CHECK(loop_ray_parities(t.strands[i], 2) == loop_ray_parities(d.strands[i], 2));
  // A puncture not linked by anything is untouched.
  Diagram u = insert_ray_twist(d, 2, +1);
  CHECK(u.crossings.empty());

  Multicurve m3({SubsetCurve::of({1}), SubsetCurve::of({1, 2}),
                 SubsetCurve::of({1, 2})}, 2);
  Diagram d3 = realize(m3, 2);
  Diagram t3 = insert_ray_twist(d3, 1, -1);
  CHECK(t3.crossings.size() == 6);  // n(n-1) with n = 3
  validate_diagram(t3);
}

TEST_CASE("surgery along a disjoint curve is the identity") {
  Diagram d = realize(Multicurve({SubsetCurve::of({1})}, 3), 3);
  Diagram t = dehn_surgery(d, SubsetCurve::of({3}), +1);
  CHECK(t.strands == d.strands);
  CHECK(t.crossings.size() == d.crossings.size());
}

TEST_CASE("surgery reroutes strands crossing the collar") {
  // The small loop around 2 meets the collar of the standard curve around
  // {1,3} in four points; the rerouted diagram stays in general position and
  // acquires only pairwise-cancelling crossings.
  Diagram d = realize(Multicurve({SubsetCurve::of({2})}, 3), 3);
  Diagram t = dehn_surgery(d, SubsetCurve::of({1, 3}), +1);
  CHECK(t.strands.size() == 1);
  CHECK(t.crossings.size() == 4 * 3);  // n(n-1) with n = 4 passages
  validate_diagram(t);
  CHECK(loop_ray_parities(t.strands[0], 3) == SubsetCurve::of({2}).mask());
  Diagram tm = dehn_surgery(d, SubsetCurve::of({1, 3}), -1);
  CHECK(tm.crossings.size() == 4 * 3);
  CHECK(!(tm.strands == t.strands));  // opposite twists differ geometrically
}

TEST_CASE("diagram json round trip") {
  Multicurve m({SubsetCurve::of({1}), SubsetCurve::of({1, 2})}, 2);
  Diagram d = insert_ray_twist(realize(m, 2), 1, +1);
  nlohmann::json j = d.to_json();
  Diagram e = Diagram::from_json(j);
  CHECK(e.b == d.b);
  CHECK(e.strands == d.strands);
  CHECK(e.crossings.size() == d.crossings.size());
  CHECK(writhe(e) == writhe(d));
}

TEST_CASE("multicurve json round trip") {
  Multicurve m({SubsetCurve::of({2}), SubsetCurve::of({1, 2, 3})}, 3);
  auto j = m.to_json();
  CHECK(Multicurve::from_json(j, 3) == m);
}
