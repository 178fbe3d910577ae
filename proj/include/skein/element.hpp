#pragma once
#include <map>

#include "skein/geom.hpp"
#include "skein/laurent.hpp"

namespace skein {

// A finite linear combination of standard multicurves with Laurent
// polynomial coefficients.
struct SkeinElement {
  int b = 0;
  std::map<Multicurve, LaurentPoly> terms;

  static SkeinElement zero(int b) { return SkeinElement{b, {}}; }
  static SkeinElement unit(int b) {
    SkeinElement e{b, {}};
    e.terms[Multicurve({}, b)] = LaurentPoly(Rational(1));
    return e;
  }
  static SkeinElement monomial(const Multicurve& m, LaurentPoly c) {
    SkeinElement e{m.b(), {}};
    e.terms[m] = std::move(c);
    return e;
  }

  SkeinElement& operator+=(const SkeinElement& o);
  SkeinElement& operator-=(const SkeinElement& o);
  SkeinElement& operator*=(const LaurentPoly& c);
  SkeinElement operator+(const SkeinElement& o) const;
  SkeinElement operator-(const SkeinElement& o) const;
  SkeinElement operator-() const;
  SkeinElement scaled(const LaurentPoly& c) const;
  bool operator==(const SkeinElement& o) const;
  bool is_zero() const;
  void prune();  // drop zero coefficients

  nlohmann::json to_json() const;
  static SkeinElement from_json(const nlohmann::json& j);
};

}  // namespace skein
