#pragma once

#include "quintic/polynomial.hpp"
#include "quintic/precision.hpp"
#include "quintic/reduction.hpp"

#include <vector>

namespace quintic {

enum class BringMethod { series, nested_radical, polished_continuation };

struct SeriesDiagnostics {
    unsigned long terms_used = 0;
    bool converged = false;
    BringMethod method = BringMethod::series;
};

// Principal solution of x^5 + x + t = 0: the branch analytic at t = 0 with
// x(0) = 0.  Inside |t| <= 1/2 a pure hypergeometric series in t^4 is summed
// (the disk of analyticity reaches 4 * 5^(-5/4) ~ 0.535); beyond that the
// root is tracked along the ray from a series seed at |t| = 0.4 and Newton-
// polished at each step.  Throws BranchError when the ray runs into one of
// the four collision points on the |t| = 4 * 5^(-5/4) circle where two roots
// meet; all_roots still works there.
Complex br(const Complex& t, const NumericContext& ctx, SeriesDiagnostics* diag = nullptr);

// x^n for the root x of  a q x^p + x^q = 1  analytic at a = 0 (x -> 1), via
// the Gamma-ratio series  x^n = (n/q) sum_k Gamma((n+pk)/q) (-qa)^k /
// (Gamma((n+pk)/q - k + 1) k!).  Terms whose denominator Gamma sits at a
// pole vanish (reciprocal-Gamma limit); when both Gammas sit at poles the
// finite reflection limit of their ratio is used.  Divergence at the given
// parameters raises DivergenceError.
Complex lambert_euler(long p, long q, const Complex& a, long n, const NumericContext& ctx);

// Fixed point of x <- (-B - A x)^(1/5) (principal fifth root), i.e. a root
// of x^5 + A x + B = 0 whenever the iteration contracts.  Convergence is
// empirical: DivergenceError is raised if max_iter passes without the step
// shrinking below the working tolerance.
Complex nested_radical(const Complex& A, const Complex& B, unsigned long max_iter,
                       const NumericContext& ctx, SeriesDiagnostics* diag = nullptr);

// Newton refinement of x0 against p.  Returns the best iterate found; the
// optional flag reports whether |p(x)| dropped below ctx.tol.  A vanishing
// derivative at an iterate raises DivergenceError.
Complex newton_polish(const Poly& p, const Complex& x0, unsigned long max_iter,
                      const NumericContext& ctx, bool* converged = nullptr);

// All five roots of x^5 + x + t = 0: the br root first, then the deflated
// quartic solved in closed form, everything re-polished against the
// undeflated quintic.  If the br continuation fails (collision ray), falls
// back to five Newton starts at perturbed fifth roots of -t.
std::vector<Complex> all_roots(const BringForm& form, const NumericContext& ctx);

}  // namespace quintic
