#pragma once
#include "skein/element.hpp"
#include "skein/geom.hpp"

namespace skein {

// Fully resolves all crossings of d (A-state weight A, B-state weight 1/A),
// classifies each resulting loop by its puncture-ray parities, maps null loops
// to the loop value and the rest to standard multicurves.
SkeinElement resolve(const Diagram& d);

// Bracket evaluation in the unpunctured disk (d.b must be 0): the resolved
// element is a multiple of the empty multicurve; returns that coefficient.
LaurentPoly bracket_disk(const Diagram& d);

}  // namespace skein
