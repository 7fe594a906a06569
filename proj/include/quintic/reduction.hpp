#pragma once

#include "quintic/polynomial.hpp"
#include "quintic/precision.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace quintic {

// x^5 + c2 x^2 + c1 x + c0 (no quartic or cubic term).
struct PrincipalQuintic {
    Complex c2, c1, c0;
};

// x^5 + A2 x + B2.
struct BringJerrard {
    Complex A2, B2;
};

// x^5 + x + t.
struct BringForm {
    Complex t;
};

// Record of the substitutions applied on the way down, so roots can be
// mapped back up. Inactive stages are left disengaged.
struct TransformChain {
    std::optional<Complex> shift;                    // pre-shift x -> x + delta for degenerate denominators
    std::optional<std::pair<Complex, Complex>> quad; // y = x^2 + A x + B
    std::optional<std::array<Complex, 4>> quartic;   // y = x^4 + k x^3 + l x^2 + m x + n
    std::optional<Complex> scale;                    // y_bj = scale * y_bring, scale = A2^{1/4}
};

struct DegenerateInputError : DomainError {
    using DomainError::DomainError;
};
struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Discriminant-like quantity under the square root of the quartic-stage
// coefficient formulas (exposed for verification).
Complex quartic_stage_discriminant(const PrincipalQuintic& p);

// Roots of x^3 = 3 a x + b via the quadratic resolvent X^2 - b X + a^3 = 0:
// x = cbrt(A) + cbrt(B) over the three cube-root pairings with cbrt(A)*cbrt(B) = a.
std::vector<Complex> solve_cubic(const Complex& a, const Complex& b, const NumericContext& ctx);

// All four roots of a degree-4 polynomial (Ferrari resolvent route).
std::vector<Complex> solve_quartic(const Poly& p, const NumericContext& ctx);

// Kill the x^4 and x^3 terms of a monic quintic with the quadratic
// Tschirnhausen substitution y = x^2 + A x + B.
PrincipalQuintic to_principal(const Poly& p, TransformChain& chain, const NumericContext& ctx);

// Kill the x^2 term of a principal quintic with the quartic substitution
// y = x^4 + k x^3 + l x^2 + m x + n; m is picked among the roots of its
// vanishing cubic by the elimination residual.
BringJerrard to_bring_jerrard(const PrincipalQuintic& p, TransformChain& chain, const NumericContext& ctx);

// Rescale x^5 + A2 x + B2 by x = A2^{1/4} y to y^5 + y + t, t = B2 / A2^{5/4}.
BringForm to_bring(const BringJerrard& bj, TransformChain& chain, const NumericContext& ctx);

// Invert the recorded chain: for each reduced root collect the stage
// preimages, filter by residual against the original polynomial, and keep
// the five best-matching candidates.
std::vector<Complex> back_map(const std::vector<Complex>& reduced_roots, const TransformChain& chain,
                              const Poly& original, const NumericContext& ctx);

}  // namespace quintic
