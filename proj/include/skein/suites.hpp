#pragma once
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace skein {

// One named pass/fail check inside a verification suite.
struct CheckResult {
  std::string name;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

// The theta product table over the quotient basis representatives, including
// the residue families, on b punctures.
SuiteResult suite_product_table(int b);

// The two exact product identities for the crossing pair-curves in the
// 4-punctured disk (anticommutator and commutator), term for term.
SuiteResult suite_product_identities();

// Basis independence through the quadratic form of theta: `nvectors` random
// rational vectors over the non-unit basis representatives, plus the
// dimension count 1 + 1 + b(b+1)/2 + C(b,3).
SuiteResult suite_basis(int b, int nvectors, unsigned seed);

// Twist verification (surgery vs exponential), the seven presentation
// relations, and the lantern relation.
SuiteResult suite_braid();

// Structural property checks: Reidemeister invariance of resolution,
// confluence under crossing order, the trace property of theta on random
// pairs, centrality of the boundary curve, agreement of the word and curve
// routes into the quotient, and kink invariance of the corrected class.
SuiteResult suite_properties(unsigned seed);

// All of the above with default parameters, in a deterministic order.
std::vector<SuiteResult> suite_all(unsigned seed);

}  // namespace skein
