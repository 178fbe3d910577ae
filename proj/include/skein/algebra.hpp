#pragma once
#include <vector>

#include "skein/element.hpp"

namespace skein {

// The class of the standard loop around the punctures of s.
SkeinElement curve(const SubsetCurve& s, int b);
SkeinElement curve(const Multicurve& m);

// Product in the skein algebra: x drawn over y.  Basis products are computed
// by stacking standard realizations and resolving; results are memoized.
SkeinElement mul(const SkeinElement& x, const SkeinElement& y);

// Counit: A -> -1, every loop -> -2.
Rational eps(const SkeinElement& x);

// xy - yx.
SkeinElement commutator(const SkeinElement& x, const SkeinElement& y);

// Divides every coefficient exactly; raises NotDivisible otherwise.
SkeinElement div_exact(const SkeinElement& x, const LaurentPoly& c);

// (xy - yx) / (-A + 1/A).
SkeinElement lie(const SkeinElement& x, const SkeinElement& y);

// Derivation action (xz - zx) / (-A + 1/A); on this algebra it coincides
// with the bracket but is kept separate as the building block of twist flows.
SkeinElement sigma(const SkeinElement& x, const SkeinElement& z);

// Inclusion-exclusion combination over subsets of I (a set of punctures),
// where the empty subset contributes the loop value times the unit.
SkeinElement angle(const std::vector<int>& I, int b);

// Representatives of the quotient basis vectors: pair(i,j) for i <= j
// (the diagonal case doubles the one-puncture combination) and the triple.
SkeinElement basis_pair(int i, int j, int b);
SkeinElement basis_triple(int i, int j, int k, int b);

// Convenience: integer powers of an element (n >= 0).
SkeinElement power(const SkeinElement& x, int n);

}  // namespace skein
