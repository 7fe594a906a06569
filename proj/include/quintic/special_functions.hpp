#pragma once

#include "quintic/precision.hpp"

#include <optional>

namespace quintic {

// Elliptic nome. When it encodes a singular parameter r, q = e^{-pi sqrt(r)}.
struct Nome {
    Complex q;
    std::optional<Real> r;

    Nome() = default;
    explicit Nome(const Complex& q_) : q(q_) {}
    Nome(const Complex& q_, const Real& r_) : q(q_), r(r_) {}

    static Nome from_r(const Real& r, const NumericContext& ctx);
};

// Modulus/complement/nome bundle for one singular parameter.
struct EllipticContext {
    Real r;
    Complex q;
    Complex k;
    Complex k_prime;
    Real ratio;  // K(k')/K(k), equals sqrt(r) by construction
};

struct RRCFValue {
    Complex v;
    Nome nome;
};

// Null-argument theta series, selector in {2,3,4}.
Complex theta(int selector, const Nome& q, const NumericContext& ctx);

// theta2^2/theta3^2.
Complex singular_modulus(const Nome& q, const NumericContext& ctx);

// Complete elliptic integral K: Gauss hypergeometric series for small modulus,
// arithmetic-geometric mean elsewhere.
Complex complete_K(const Complex& x, const NumericContext& ctx);

// Invert the period ratio K(k')/K(k) = sqrt(r) for k in (0,1).
EllipticContext modulus_from_r(const Real& r, const NumericContext& ctx);

// Rogers-Ramanujan continued fraction by backward recurrence.
RRCFValue rrcf(const Nome& q, unsigned long depth, const NumericContext& ctx);

// Depth that pushes the continued-fraction tail below the context tolerance.
unsigned long suggested_rrcf_depth(const Nome& q, const NumericContext& ctx);

// Bare product prod(1 - q^n) with q = e^{i pi tau}. Deliberately carries no
// q^{1/24} prefactor: the consumers of this function supply the compensating
// q^{+-1/24} factors themselves, so the pair stays self-consistent.
Complex dedekind_eta(const Complex& tau, const NumericContext& ctx);

// Klein invariant from the modulus: 256 (k^2 + k'^4)^3 / (k k')^4.
Complex j_from_modulus(const Complex& k, const NumericContext& ctx);

}  // namespace quintic
