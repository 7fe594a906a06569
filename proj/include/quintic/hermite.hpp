#pragma once

#include "quintic/polynomial.hpp"
#include "quintic/precision.hpp"
#include "quintic/special_functions.hpp"

#include <array>

namespace quintic {

enum class ModulusSide { low, high };

// Snapshot of the elliptic data behind one solved normal form x^5 - x + a.
// For complex or sub-minimum a the root is continued from a real anchor;
// the context then describes that anchor evaluation.
struct HermiteContext {
    Complex a;
    Complex k;
    Real r;
    Complex tau;
    std::array<Complex, 4> phi_values;  // the four shifted evaluations
};

struct ModulusNomePair {
    Real q;
    Real r;
};

// Coefficient of the normal form reachable from modulus k:
// a = 2 (1 + k^2) / (5^(5/4) sqrt(k) k').
Complex a_from_modulus(const Complex& k, const NumericContext& ctx);

// Minimum of the coefficient map over k in (0,1): 4 * 5^(-5/4), attained at
// k = sqrt(2) - 1.  The map is U-shaped (it blows up at both endpoints) but
// not symmetric under k <-> k'.
Real a_minimum();

// Invert the coefficient map on the requested monotone half: low picks the
// modulus below sqrt(2) - 1 (small k, deep nome, fast theta products), high
// the one above.  a below the minimum raises DomainError naming the bound.
Real modulus_from_a(const Real& a, ModulusSide side, const NumericContext& ctx);

// Period ratio data for a real modulus: r = (K(k')/K(k))^2, q = e^(-pi sqrt r).
ModulusNomePair nome_from_modulus(const Real& k, const NumericContext& ctx);

// Quartic-root modulus product: [m(q^5)^(1/4) + m(q^(1/5))^(1/4)] *
// [phi((tau+16)/5) - phi((tau+64)/5)] * [phi((tau+32)/5) - phi((tau+48)/5)]
// with phi(sigma) = m(e^(i pi sigma))^(1/4) in its product form, which is
// analytic in sigma (no quarter-power branch jumps between factors).
Complex hermite_phi_product(const Complex& tau, const NumericContext& ctx);

// The alternative spelling of the same product through the negated-nome
// moduli m(-(-q)^(1/5)) and m(-(-sqrt(q))^(1/5)).  Validator only: the two
// forms disagree numerically on the real-nome ray and the deviation is
// reported rather than reconciled.
Complex hermite_phi_alternative(const Complex& tau, const NumericContext& ctx);

// A root of x^5 - x + a = 0 by the elliptic route: invert a to a modulus,
// build tau from the period ratio, assemble the phi product, and fix the
// overall sign by residual.  Real a at or above the minimum evaluates
// directly; anything else is Newton-tracked from a real anchor.  Residual
// failure on both signs raises BranchError (callers fall back to the series
// solver).
Complex hermite_root(const Complex& a, const NumericContext& ctx, HermiteContext* out = nullptr);

// Validation sweep of the composite-chain construction for 15 < r < 25:
// every intermediate is recomputed against its theta-route value and the
// final root candidate is scored against both sign readings of the normal
// form.  Reporting only; nothing here gates the solvers.
struct MainTheoremReport {
    Real r;
    Complex u;        // continued-fraction value at the nome
    Complex t;        // modulus k_r via the invariant chain
    Complex l;        // modulus k_{r/25}
    Complex m_neg;    // modulus at the rotated fifth-root nome
    Complex c1;       // modulus at the rotated tenth-root nome
    Complex alpha, p, s, Y, k_up;
    Complex a;
    Complex root;
    Real residual_minus;  // |root^5 - root - a|
    Real residual_plus;   // |root^5 - root + a|
    Real t_direct_err, l_direct_err, m_neg_direct_err, c1_direct_err;
    Real phi_alt_deviation;  // |product form - alternative form| at i sqrt(r)
    bool deep_orbit_fallback = false;
};

MainTheoremReport main_theorem_pipeline(const Nome& nome, const NumericContext& ctx);

}  // namespace quintic
