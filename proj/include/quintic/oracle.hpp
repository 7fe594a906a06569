#pragma once

#include "quintic/polynomial.hpp"
#include "quintic/precision.hpp"

#include <vector>

namespace quintic {

// Simultaneous root refinement (Aberth–Ehrlich) for arbitrary-degree dense
// polynomials. Independent of the structured quintic pipeline; used as the
// reference answer in cross-checks and as a general-purpose fallback.
std::vector<Complex> all_roots_reference(const Poly& p, const NumericContext& ctx,
                                         unsigned max_iter = 400);

}  // namespace quintic
