#pragma once
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "skein/element.hpp"
#include "skein/reduce.hpp"

namespace skein {

// A class in the quotient of the skein algebra by the square of the
// augmentation ideal, in coordinates over the basis
//   { 1, A+1, pair(i,j) for i <= j, triple(i,j,k) for i < j < k }.
struct QuotClass2 {
  Rational unit;
  Rational h;  // coefficient of A+1
  std::map<std::pair<int, int>, Rational> pairs;
  std::map<std::array<int, 3>, Rational> triples;

  QuotClass2& operator+=(const QuotClass2& o);
  QuotClass2& operator-=(const QuotClass2& o);
  QuotClass2 operator+(const QuotClass2& o) const;
  QuotClass2 operator-(const QuotClass2& o) const;
  QuotClass2 scaled(const Rational& c) const;
  bool operator==(const QuotClass2& o) const;
  bool is_zero() const;
  void prune();  // drop zero entries

  void add_pair(int i, int j, const Rational& c);    // unordered indices
  void add_triple(int i, int j, int k, const Rational& c);  // signed sort

  nlohmann::json to_json() const;
  static QuotClass2 from_json(const nlohmann::json& j);
};

// A word in the free group on the ray generators r_1..r_b.
struct GroupWord {
  std::vector<std::pair<int, int>> letters;  // (generator, exponent +1/-1)

  GroupWord() = default;
  GroupWord(std::initializer_list<std::pair<int, int>> ls) : letters(ls) {}
  GroupWord operator*(const GroupWord& o) const;
  GroupWord inverse() const;
  static GroupWord gen(int i, int e = 1) { return GroupWord{{i, e}}; }
};

// Normal form of a skein element in the quotient.
QuotClass2 nf2(const SkeinElement& x);

// Class of c_S + 2 for a single subset curve: half-pairs on the diagonal,
// pairs and triples over the subset.
QuotClass2 subset_expand(const SubsetCurve& s);

// Class of a free-group word through the degree-3 Magnus truncation.
QuotClass2 word_class(const GroupWord& w);

// Class of a user-supplied link diagram: knots get the writhe-corrected kappa
// class; multi-component links get the (-2)^{-|L|}-normalized order-2 class.
QuotClass2 link_class(const Diagram& d);

// The wedge map on triples of ray generators.
QuotClass2 lambda_map(int i, int j, int k);
// The degree-lowering section: rho_unit() = A+1, rho_pair = pair class.
QuotClass2 rho_unit();
QuotClass2 rho_pair(int i, int j);

// A concrete skein element whose image in the quotient has the given basis
// coordinates: the unit, (A+1)*unit, and inclusion-exclusion classes.
SkeinElement lift_class(const QuotClass2& q, int b);

// Membership test for the depth-3 filtration layer.
bool f3_test(const SkeinElement& x);

// Alternating sum over sub-multicurves, normalized per component count.
QuotClass2 ftype_sum_check(const Multicurve& m, int n);

}  // namespace skein
