#include "quintic/bring.hpp"

#include <algorithm>
#include <cstdlib>

namespace quintic {

namespace {

constexpr unsigned kGuard = 20;
constexpr unsigned long kSeriesCap = 400'000;
constexpr unsigned long kLambertCap = 200'000;

Real max1(const Real& x) { return x > 1 ? x : Real(1); }

Poly bring_poly(const Complex& t) {
    return Poly({t, Complex(1), Complex(0), Complex(0), Complex(0), Complex(1)});
}

// 4F3({1/5,2/5,3/5,4/5}; {1/2,3/4,5/4}; -3125 t^4/256) scaled by -t, by term
// recursion.  Caller guarantees |t| is inside the convergence disk.
Complex hypergeometric_root(const Complex& t, const Real& stop, unsigned long* terms_out) {
    Complex z = Complex(-3125) * pown(t, 4) / Complex(256);
    Complex term(1), sum(1);
    unsigned long k = 0;
    int quiet = 0;
    while (k < kSeriesCap) {
        Real kr(static_cast<long>(k));
        Complex num = Complex(kr + Real(1) / 5) * Complex(kr + Real(2) / 5) *
                      Complex(kr + Real(3) / 5) * Complex(kr + Real(4) / 5);
        Complex den = Complex(kr + Real(1) / 2) * Complex(kr + Real(3) / 4) *
                      Complex(kr + Real(5) / 4) * Complex(kr + 1);
        term = term * z * num / den;
        sum = sum + term;
        ++k;
        if (abs(term) < stop * max1(abs(sum))) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    if (terms_out) *terms_out = k;
    return -t * sum;
}

// Newton iteration on x^5 + x + t; true when the step shrank below stop.
bool newton_quintic(Complex& x, const Complex& t, const Real& stop, int iters) {
    for (int i = 0; i < iters; ++i) {
        Complex x4 = pown(x, 4);
        Complex fp = 5 * x4 + Complex(1);
        if (abs(fp) == 0) return false;
        Complex dx = ((x4 + Complex(1)) * x + t) / fp;
        x = x - dx;
        if (abs(dx) <= stop * max1(abs(x))) return true;
    }
    return false;
}

}  // namespace

Complex br(const Complex& t_, const NumericContext& ctx, SeriesDiagnostics* diag) {
    ScopedDigits guard(ctx.working_digits + kGuard);
    Complex t = lift(t_);
    Real tol = lift(ctx.tol);
    Real at = abs(t);
    if (at == 0) {
        if (diag) *diag = {1, true, BringMethod::series};
        return Complex(0);
    }

    Real stop = pow10(-static_cast<long>(ctx.working_digits + kGuard) + 4);

    if (2 * at <= 1) {
        unsigned long terms = 0;
        Complex x = hypergeometric_root(t, stop, &terms);
        newton_quintic(x, t, stop, 8);  // clears the last truncation bits
        if (diag) *diag = {terms, true, BringMethod::series};
        return x;
    }

    // track the analytic branch along the ray from a series seed
    Complex u = t / Complex(at);
    Real s = Real(2) / 5;
    unsigned long terms = 0;
    Complex x = hypergeometric_root(u * Complex(s), stop, &terms);
    bool ok = true;
    while (s < at) {
        s = s + Real(1) / 10;
        if (s > at) s = at;
        ok = newton_quintic(x, u * Complex(s), stop, 80);
        ++terms;
        if (!ok) break;
    }
    Real resid = abs((pown(x, 4) + Complex(1)) * x + t);
    bool converged = ok && resid < tol * max1(at);
    if (diag) *diag = {terms, converged, BringMethod::polished_continuation};
    if (!converged)
        throw BranchError("root tracking stalled near a collision point; use all_roots instead");
    return x;
}

Complex lambert_euler(long p, long q, const Complex& a_, long n, const NumericContext& ctx) {
    if (q < 1) throw DomainError("q must be a positive integer");
    if (n < 1) throw DomainError("n must be a positive integer");
    ScopedDigits guard(ctx.working_digits + kGuard);
    Complex a = lift(a_);
    if (abs(a) == 0) return Complex(1);  // x^q = 1, analytic branch x = 1

    Real stop = pow10(-static_cast<long>(ctx.working_digits + kGuard) + 4);
    const Real snap = pow10(-40);
    Complex base = Complex(Real(-q)) * a;
    Complex powk(1);
    Real kfact(1);
    Complex sum(0);
    Real peak(0);
    int quiet = 0;

    for (unsigned long k = 0; k < kLambertCap; ++k) {
        if (k > 0) {
            powk = powk * base;
            kfact = kfact * Real(static_cast<long>(k));
        }
        Real nu = (Real(n) + Real(p) * Real(static_cast<long>(k))) / Real(q);
        Real c = nu - Real(static_cast<long>(k)) + 1;
        bool c_pole = bmp::abs(c - nearest_integer(c)) < snap && c < Real(1) / 2;
        bool nu_pole = bmp::abs(nu - nearest_integer(nu)) < snap && nu < Real(1) / 2;

        Complex term(0);
        if (nu_pole && c_pole) {
            // both Gammas at poles: ratio has the finite reflection limit
            // (-1)^(c - nu) Gamma(1-c)/Gamma(1-nu), and c - nu = 1 - k
            Real ratio = gamma_real(1 - c) / gamma_real(1 - nu);
            if (k % 2 == 0) ratio = -ratio;
            term = Complex(ratio) * powk / Complex(kfact);
        } else if (c_pole) {
            term = Complex(0);  // reciprocal Gamma vanishes
        } else if (nu_pole) {
            throw DivergenceError("series term sits on a numerator Gamma pole");
        } else {
            term = Complex(gamma_real(nu) / gamma_real(c)) * powk / Complex(kfact);
        }

        sum = sum + term;
        Real at = abs(term);
        Real scale = max1(abs(sum));
        if (at > peak) peak = at;
        if (k > 20) {
            if (at < stop * scale) {
                if (++quiet >= 6) return Complex(Real(n) / Real(q)) * sum;
            } else {
                quiet = 0;
            }
            if (at > pow10(12) * scale && at >= peak)
                throw DivergenceError("the series diverges at these parameters");
        }
    }
    throw DivergenceError("no convergence within the term cap");
}

Complex nested_radical(const Complex& A_, const Complex& B_, unsigned long max_iter,
                       const NumericContext& ctx, SeriesDiagnostics* diag) {
    ScopedDigits guard(ctx.working_digits + kGuard);
    Complex A = lift(A_), B = lift(B_);
    Real stop = pow10(-static_cast<long>(ctx.working_digits + kGuard) + 4);

    Complex x = abs(B) == 0 ? Complex(0) : pow(-B, Real(1) / 5);
    unsigned long it = 0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        Complex inner = -B - A * x;
        Complex xn = abs(inner) == 0 ? Complex(0) : pow(inner, Real(1) / 5);
        Real step = abs(xn - x);
        x = xn;
        if (step <= stop * max1(abs(x))) {
            converged = true;
            ++it;
            break;
        }
        if (abs(x) > pow10(12)) break;  // runaway orbit, no point continuing
    }
    if (diag) *diag = {it, converged, BringMethod::nested_radical};
    if (!converged) throw DivergenceError("the nested-radical iteration does not settle here");
    return x;
}

Complex newton_polish(const Poly& p_, const Complex& x0, unsigned long max_iter,
                      const NumericContext& ctx, bool* converged) {
    ScopedDigits guard(ctx.working_digits + kGuard);
    Poly p;
    p.c.reserve(p_.c.size());
    for (const Complex& cc : p_.c) p.c.push_back(lift(cc));
    if (p.degree() < 1) throw DomainError("cannot polish against a constant");
    Poly dp = derivative(p);
    Real tol = lift(ctx.tol);

    Complex x = lift(x0);
    Complex best = x;
    Real best_resid = abs(eval(p, x));
    bool ok = best_resid < tol;
    for (unsigned long i = 0; i < max_iter && !ok; ++i) {
        Complex d = eval(dp, x);
        if (abs(d) == 0) throw DivergenceError("derivative vanished during polish");
        x = x - eval(p, x) / d;
        Real resid = abs(eval(p, x));
        if (resid < best_resid) {
            best_resid = resid;
            best = x;
        }
        ok = best_resid < tol;
    }
    if (converged) *converged = ok;
    return best;
}

std::vector<Complex> all_roots(const BringForm& form, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + kGuard);
    Complex t = lift(form.t);
    Poly quintic = bring_poly(t);
    Real tol = lift(ctx.tol);
    Real scale = max1(abs(t));

    auto finish = [&](const Complex& first) {
        std::vector<Complex> roots{first};
        Poly quartic = deflate(quintic, first);
        for (const Complex& r0 : solve_quartic(quartic, ctx))
            roots.push_back(newton_polish(quintic, r0, 64, ctx));
        for (const Complex& r : roots)
            if (!(abs(eval(quintic, r)) < tol * scale))
                throw PrecisionError("root residual exceeds the tolerance after polish");
        return roots;
    };

    try {
        Complex x0 = newton_polish(quintic, br(t, ctx), 64, ctx);
        return finish(x0);
    } catch (const BranchError&) {
    } catch (const DivergenceError&) {
    }

    // five Newton starts at perturbed fifth roots of -t; the best-converged
    // one re-anchors the deflation path
    Complex c5 = pow(-t, Real(1) / 5);
    Complex best;
    Real best_resid(-1);
    for (int pass = 0; pass < 4; ++pass) {
        Real wobble = Real(3 + 11 * pass) / 100;
        for (int j = 0; j < 5; ++j) {
            Complex seed = c5 * polar(Real(1), 2 * const_pi() * j / 5) *
                           (Complex(1) + Complex(wobble) * polar(Real(1), Real(7 * j + 9 * pass) / 10));
            bool ok = false;
            Complex r = newton_polish(quintic, seed, 200, ctx, &ok);
            if (!ok) continue;
            Real resid = abs(eval(quintic, r));
            if (best_resid < 0 || resid < best_resid) {
                best_resid = resid;
                best = r;
            }
        }
        if (best_resid >= 0 && best_resid < tol * scale) return finish(best);
    }
    throw DivergenceError("no start converged to a quintic root");
}

}  // namespace quintic
