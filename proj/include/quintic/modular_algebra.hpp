#pragma once

#include "quintic/precision.hpp"
#include "quintic/special_functions.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace quintic {

// The four radical branches that invert the Klein invariant back to a modulus.
enum class TBranch { t31, t32, t33, t34 };

// x = R(q) -> R(q^2). Returned value is an exact root of the degree-2
// continued-fraction relation; the branch is fixed by the radical closed form
// (falling back to the root nearest x^2, the small-nome asymptote).
Complex t1(const Complex& x, const NumericContext& ctx);

// Klein invariant from R(q^2).
Complex t2(const Complex& x, const NumericContext& ctx);

// One radical branch of the modulus with prescribed Klein invariant j.
Complex t3(const Complex& j, TBranch branch, const NumericContext& ctx);

// All four branches with their round-trip residuals |j(k) - j|, best first.
// Branches that fail to evaluate are dropped.
std::vector<std::pair<Complex, Real>> t3_candidates(const Complex& j, const NumericContext& ctx);

// The six moduli k with j(k) = j, via the multiplier cubic
// 256 (1 - mu)^3 = j mu^2, lambda = (1 +- sqrt(1 - 4 mu))/2, k = sqrt(lambda).
// Callers arbitrate with whatever downstream residual defines "the" branch.
std::vector<Complex> modulus_candidates_from_j(const Complex& j, const NumericContext& ctx);

// x = R(q) -> R(q^{1/5}), principal fifth root of the degree-5 relation.
Complex t4(const Complex& x, const NumericContext& ctx);

// Modulus at the negated nome: x -> x/sqrt(x^2 - 1), principal square root.
// On the real interval (0, 1) this lands on the conjugate of the theta-series
// value at -q; the two are the branch pair of the same quadratic.
Complex t5(const Complex& x, const NumericContext& ctx);

// Ramanujan quantity u(q) = q^{3/5} prod_{n>=1} (1 - q^n)^{e(n)} with
// e(n) = +1 for n = +-1 (mod 10), -1 for n = +-3 (mod 10), 0 otherwise.
Complex ramanujan_quantity(const Complex& q, const NumericContext& ctx);

// u at the nome of v = R(q): the smallest positive real root of
// u^3 + v^3 u^2 - v u + v^4 = 0, or the radical branch when no real root
// exists (off the real nome interval).
Complex ramanujan_quantity_from_rrcf(const Complex& v, const NumericContext& ctx);

// x = R(q) -> R(-q). Experimental: rests on a conjectural product identity,
// so cross-check against rrcf at the negated nome before trusting downstream.
Complex t6(const Complex& x, const NumericContext& ctx);

// x = R(q) -> R(q^{1/2}), the inverse direction of t1. Exact root of the
// degree-2 relation with the pair roles swapped.
Complex t7(const Complex& x, const NumericContext& ctx);

// Degree-5 multiplier pair: Y = u_fwd(X) and X = u_star(Y) both satisfy
// X^2/(sqrt5 Y) - sqrt5 Y/X^2 = (Y^3 - 1/Y^3)/sqrt5.
Complex u_fwd(const Complex& x, const NumericContext& ctx);
Complex u_star(const Complex& y, const NumericContext& ctx);

// p = 2 sinh(arcsinh((11 + alpha)/2) / 5).
Complex p_from_alpha(const Complex& alpha, const NumericContext& ctx);

// s = cbrt((p - 1)^5 / (11 + 6p + 6p^2 + p^3 + p^4)), principal cube root.
Complex s_from_p(const Complex& p, const NumericContext& ctx);

// All roots of Y^3 + (5/s) Y^2 - s Y - 1 = 0.
std::array<Complex, 3> y_roots(const Complex& s, const NumericContext& ctx);

// The root whose induced fifth-degree ascent of k_base satisfies the degree-5
// modular relation; throws BranchError when none passes.
Complex y_root(const Complex& s, const Complex& k_base, const NumericContext& ctx);

// Residual of the degree-5 modular relation between a modulus k and its
// quarter-period quintupling K: |k K + k' K' + 2^{5/3} (k K k' K')^{1/3} - 1|.
Real modulus_degree5_residual(const Complex& k, const Complex& k_up, const NumericContext& ctx);

// The same relation depressed into fourth roots u = k_up^{1/4}, v = k^{1/4}:
// |u^6 - v^6 + 5 u^2 v^2 (u^2 - v^2) + 4 u v (1 - u^4 v^4)|.
Real modulus_degree5_depressed_residual(const Complex& k, const Complex& k_up,
                                        const NumericContext& ctx);

// One 25-fold ascent step k_r x k_{r/25} -> k_{25r} with its intermediates.
struct AscentState {
    Complex k_base;  // k_r
    Complex k_down;  // k_{r/25}
    Complex alpha;
    Complex p;
    Complex s;
    Complex Y;     // arbitrated cubic root
    Complex k_up;  // k_{25r}
};

AscentState psi_state(const Complex& k_r, const Complex& k_r_down, const NumericContext& ctx);

// k_{25r} from (k_r, k_{r/25}).
Complex psi(const Complex& k_r, const Complex& k_r_down, const NumericContext& ctx);

// Iterated ascent: k_{25^j r0} for j = 1..n. Working precision is raised
// internally so the deepest modulus stays meaningful; throws PrecisionError
// when the requested depth would outrun any sane precision.
std::vector<Complex> ascend_25n(const Complex& k_r0, const Complex& k_r0_down, unsigned n,
                                const NumericContext& ctx);

// --- identity validators -------------------------------------------------

struct IdentityRow {
    Complex q;
    Real residual;
    bool pass;  // residual < gate; informational only for conjectural tags
};

struct IdentityReport {
    std::string tag;
    bool established;  // false marks a conjectural identity: report, never gate
    Real gate;
    std::vector<IdentityRow> rows;
    bool all_pass;
};

// Known identity tags, established ones first.
const std::vector<std::string>& identity_tags();

// Evaluates both sides of a tagged identity independently at each nome sample
// and reports per-sample residuals. Samples must satisfy |q| < 1.
IdentityReport validate_identity(const std::string& tag, const std::vector<Complex>& q_samples,
                                 const NumericContext& ctx);

}  // namespace quintic
