#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skein/algebra.hpp"
#include "skein/geom.hpp"

#include <nlohmann/json_fwd.hpp>

namespace skein {

// Kauffman bracket of a diagram with no punctures, computed by frontier
// contraction: crossings are expanded in sweep order and only the pairing on
// the open arc ends is tracked, so it scales to far more crossings than a
// global state sum as long as the frontier stays narrow.
LaurentPoly bracket_tl(const Diagram& d);

// theta: insert a positive full twist on the cable crossing every puncture
// ray, forget the punctures, and take the bracket.  Linear over the terms.
LaurentPoly theta(const SkeinElement& x);

// Cached single-key evaluation.
LaurentPoly theta_multicurve(const Multicurve& m);

// Exact theta of a product of multicurves: stacks the standard realizations
// (earlier factors on top), inserts the twists, and evaluates the bracket.
// This never projects the intermediate product onto the multicurve basis,
// so it is exact where the projected product is only exact modulo the
// square of the augmentation ideal.
LaurentPoly theta_stack(const std::vector<Multicurve>& factors, int b);

// A Laurent combination of formal (unexpanded) products of multicurves.
// Keeping products formal lets theta evaluate them at the diagram level.
struct FormalProduct {
  int b = 0;
  std::vector<std::pair<std::vector<Multicurve>, LaurentPoly>> terms;

  static FormalProduct unit(int b);
  static FormalProduct from_element(const SkeinElement& x);
  FormalProduct operator*(const FormalProduct& o) const;
  FormalProduct operator+(const FormalProduct& o) const;
  FormalProduct operator-(const FormalProduct& o) const;
  FormalProduct scaled(const LaurentPoly& c) const;
  // Expands through the basis-projected product.
  SkeinElement project() const;
};

LaurentPoly theta(const FormalProduct& x);

// Closed form A^{2n}(A^4+1+A^-4) + A^{-6n} for the n-clasp two-component
// evaluation underlying the pair oracle.
LaurentPoly K_L(int n);

// (-A^3)^{|I|+|J|} * K_L(|I&J|).
LaurentPoly theta_pair_oracle(const std::vector<int>& I, const std::vector<int>& J);

// Gram matrix of theta over the quotient basis representatives (without the
// unit): scalar A+1, pairs <i,j> (i <= j), triples <i,j,k>.
struct GramResult {
  int b = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<LaurentPoly>> entries;
  bool table_ok = false;     // entries match the closed-form product table
  bool independent = false;  // quadratic-form independence verdict
  nlohmann::json to_json() const;
  std::string to_csv() const;
};
GramResult gram(int b, unsigned seed = 2026);

// (1/(A+1)^n) theta((-2)^{-|L|} [L] * x), reduced mod (A+1)^m and returned
// as a polynomial in A.  Throws InsufficientValuation if the valuation of
// the evaluation is below n.
LaurentPoly ev(const Multicurve& L, const FormalProduct& x, int n, int m);

// Necessary-condition certificate for a filtration-degree claim: for each
// test y of known degree m, the (A+1)-valuation of theta(x*y) must be at
// least floor((n+m+1)/2).  A refuted verdict disproves the claim; a
// consistent verdict does not prove it.
struct Certificate {
  struct Entry {
    std::string id;
    int required;
    std::optional<int> observed;  // nullopt = +infinity (zero polynomial)
    bool ok;
  };
  int claimed_degree = 0;
  std::vector<Entry> entries;
  bool consistent = false;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};
Certificate divisibility_certificate(
    const FormalProduct& x, int n,
    const std::vector<std::pair<std::string, std::pair<FormalProduct, int>>>& tests);

}  // namespace skein
