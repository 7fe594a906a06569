#include "quintic/hermite.hpp"

#include "quintic/bring.hpp"
#include "quintic/modular_algebra.hpp"

#include <algorithm>

namespace quintic {

namespace {

constexpr unsigned kGuard = 20;
constexpr unsigned long kProductCap = 200'000;

Real max1(const Real& x) { return x > 1 ? x : Real(1); }

Complex quarter(const Complex& z) { return pow(z, Real(1) / 4); }

Poly normal_form(const Complex& a) {
    return Poly({a, Complex(-1), Complex(0), Complex(0), Complex(0), Complex(1)});
}

// m(e^{i pi sigma})^{1/4} as a product analytic in sigma:
// sqrt(2) e^{i pi sigma/8} prod_n (1+q^{2n})/(1+q^{2n-1}), q = e^{i pi sigma}.
// Assembling it from a quarter power of the modulus instead would jump
// branches as sigma moves; the product form never does.
Complex phi_sigma(const Complex& sigma, const Real& stop) {
    if (!(sigma.im > 0)) throw DomainError("quarter-power modulus product needs Im(sigma) > 0");
    Complex ipi(Real(0), const_pi());
    Complex q = exp(ipi * sigma);
    Complex q2 = q * q;
    Complex even = q2;  // q^{2n}
    Complex odd = q;    // q^{2n-1}
    Complex prod(1);
    for (unsigned long n = 0; n < kProductCap; ++n) {
        prod *= (Complex(1) + even) / (Complex(1) + odd);
        if (abs(odd) < stop) break;
        even *= q2;
        odd *= q2;
    }
    return Complex(bmp::sqrt(Real(2))) * exp(ipi * sigma / Complex(8)) * prod;
}

struct PhiParts {
    Complex bracket;  // m(q^5)^{1/4} + m(q^{1/5})^{1/4}
    std::array<Complex, 4> shifted;
    Complex product;
};

PhiParts phi_parts(const Complex& tau, unsigned wd) {
    if (!(tau.im > 0)) throw DomainError("upper half plane required");
    Real stop = pow10(-static_cast<long>(wd) - 5);
    PhiParts parts;
    parts.bracket = phi_sigma(Complex(5) * tau, stop) + phi_sigma(tau / Complex(5), stop);
    parts.shifted = {phi_sigma((tau + Complex(16)) / Complex(5), stop),
                     phi_sigma((tau + Complex(64)) / Complex(5), stop),
                     phi_sigma((tau + Complex(32)) / Complex(5), stop),
                     phi_sigma((tau + Complex(48)) / Complex(5), stop)};
    parts.product = parts.bracket * (parts.shifted[0] - parts.shifted[1]) *
                    (parts.shifted[2] - parts.shifted[3]);
    return parts;
}

// Real-axis coefficient map, used by the bisection.
Real a_real(const Real& k) {
    return 2 * (1 + k * k) /
           (bmp::pow(Real(5), Real(5) / 4) * bmp::sqrt(k) * bmp::sqrt(1 - k * k));
}

// Evaluate the elliptic construction at real a >= a_minimum and resolve the
// overall sign against the normal form.  Caller holds the precision guard.
Complex direct_eval(const Complex& a, const Real& k, unsigned wd, const NumericContext& ctx,
                    HermiteContext* out) {
    ModulusNomePair nr = nome_from_modulus(k, ctx);
    Complex tau(Real(0), bmp::sqrt(nr.r));
    PhiParts parts = phi_parts(tau, wd);
    Complex denom =
        Complex(2 * bmp::pow(Real(5), Real(3) / 4) * bmp::pow(k, Real(1) / 4) * bmp::sqrt(1 - k * k));
    Complex x = parts.product / denom;

    Poly f = normal_form(a);
    if (scaled_residual(f, -x) < scaled_residual(f, x)) x = -x;
    Real tol = lift(ctx.tol);
    bool ok = false;
    Complex polished = newton_polish(f, x, 60, ctx, &ok);
    if (!ok || scaled_residual(f, polished) > tol) {
        ok = false;
        Complex other = newton_polish(f, -x, 60, ctx, &ok);
        if (ok && scaled_residual(f, other) <= tol) {
            polished = other;
        } else {
            throw BranchError("elliptic evaluation failed the residual check on both signs");
        }
    }
    if (out) {
        out->a = a;
        out->k = Complex(k);
        out->r = nr.r;
        out->tau = tau;
        out->phi_values = parts.shifted;
    }
    return polished;
}

}  // namespace

Complex a_from_modulus(const Complex& k_, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + kGuard);
    Complex k = lift(k_);
    if (abs(k) == 0 || abs(k - Complex(1)) == 0)
        throw DomainError("coefficient map is singular at k = 0 and k = 1");
    Complex kp = sqrt(Complex(1) - k * k);
    return Complex(2) * (Complex(1) + k * k) /
           (Complex(bmp::pow(Real(5), Real(5) / 4)) * sqrt(k) * kp);
}

Real a_minimum() {
    return 4 / bmp::pow(Real(5), Real(5) / 4);
}

Real modulus_from_a(const Real& a_, ModulusSide side, const NumericContext& ctx) {
    unsigned wd = ctx.working_digits + kGuard;
    ScopedDigits guard(wd);
    Real a = lift(a_);
    if (!(a > 0)) throw DomainError("coefficient must be positive");
    Real kstar = bmp::sqrt(Real(2)) - 1;  // argmin of the coefficient map
    Real amin = a_minimum();
    Real tol = lift(ctx.tol);
    if (a < amin - tol * max1(a))
        throw DomainError("no real modulus: the coefficient map never drops below 4*5^(-5/4) = " +
                          to_decimal(amin, 25) + ", above the requested " + to_decimal(a, 25));
    if (a <= amin) return kstar;

    Real lo, hi;
    if (side == ModulusSide::low) {
        hi = kstar;
        lo = kstar / 2;
        unsigned halvings = 0;
        while (a_real(lo) < a) {
            lo /= 2;
            if (++halvings > 100000) throw PrecisionError("bracketing stalled near k = 0");
        }
    } else {
        lo = kstar;
        hi = (kstar + 1) / 2;
        unsigned halvings = 0;
        while (a_real(hi) < a) {
            hi = (hi + 1) / 2;
            if (++halvings > 100000) throw PrecisionError("bracketing stalled near k = 1");
        }
    }
    // Monotone on each half: decreasing below kstar, increasing above.
    unsigned long iters = static_cast<unsigned long>(wd) * 10 / 3 + 12;
    for (unsigned long i = 0; i < iters; ++i) {
        Real mid = (lo + hi) / 2;
        bool go_right = (side == ModulusSide::low) ? (a_real(mid) > a) : (a_real(mid) < a);
        if (go_right)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

ModulusNomePair nome_from_modulus(const Real& k_, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + kGuard);
    Real k = lift(k_);
    if (!(k > 0) || !(k < 1)) throw DomainError("modulus must lie in (0,1)");
    Complex K = complete_K(Complex(k), ctx);
    Complex Kp = complete_K(Complex(bmp::sqrt(1 - k * k)), ctx);
    Real ratio = Kp.re / K.re;
    return {bmp::exp(-const_pi() * ratio), ratio * ratio};
}

Complex hermite_phi_product(const Complex& tau_, const NumericContext& ctx) {
    unsigned wd = ctx.working_digits + kGuard;
    ScopedDigits guard(wd);
    return phi_parts(lift(tau_), wd).product;
}

Complex hermite_phi_alternative(const Complex& tau_, const NumericContext& ctx) {
    unsigned wd = ctx.working_digits + kGuard;
    ScopedDigits guard(wd);
    Complex tau = lift(tau_);
    if (!(tau.im > 0)) throw DomainError("upper half plane required");
    Real stop = pow10(-static_cast<long>(wd) - 5);
    Complex bracket = phi_sigma(Complex(5) * tau, stop) + phi_sigma(tau / Complex(5), stop);
    Complex q = exp(Complex(Real(0), const_pi()) * tau);
    Complex rot = polar(Real(1), 6 * const_pi() / 5);  // -(-q)^{1/5} for positive real q
    Complex mA = singular_modulus(Nome(pow(q, Real(1) / 5) * rot), ctx);
    Complex c1 = singular_modulus(Nome(pow(q, Real(1) / 10) * rot), ctx);
    Complex root_c = sqrt(Complex(1) - c1 * c1);
    Complex w = (Complex(1) - root_c) / (Complex(1) + root_c);
    return Complex(-4) * bracket * Complex(quarter(mA).re) * Complex(quarter(w).im);
}

Complex hermite_root(const Complex& a_, const NumericContext& ctx, HermiteContext* out) {
    unsigned wd = ctx.working_digits + kGuard;
    ScopedDigits guard(wd);
    Complex a = lift(a_);
    Real tol = lift(ctx.tol);
    Real amin = a_minimum();

    if (a.re < 0) return -hermite_root(-a, ctx, out);  // odd symmetry of the root set

    if (bmp::abs(a.im) <= tol * max1(abs(a)) && a.re >= amin) {
        Real k = modulus_from_a(a.re, ModulusSide::low, ctx);
        return direct_eval(Complex(a.re), k, wd, ctx, out);
    }

    // Outside the feasible ray: evaluate at a real anchor, then Newton-track
    // the root along the straight segment to the requested coefficient.
    Real am = abs(a);
    Real anchor = am > 2 * amin ? am : 2 * amin;
    Complex x = direct_eval(Complex(anchor), modulus_from_a(anchor, ModulusSide::low, ctx), wd,
                            ctx, out);

    Complex delta = a - Complex(anchor);
    Real len = abs(delta);
    if (len > 0) {
        unsigned long steps = 12;
        Real need = bmp::ceil(len * 10);
        if (need > 4000)
            throw DomainError("coefficient too far from the elliptic anchor; use the series solver");
        if (need > 12) steps = need.convert_to<unsigned long>();
        Real stop = pow10(-static_cast<long>(wd) + 4);
        for (unsigned long i = 1; i <= steps; ++i) {
            Complex ai = Complex(anchor) + delta * Complex(Real(static_cast<long>(i)) / steps);
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                Complex f = pown(x, 5) - x + ai;
                Complex d = Complex(5) * pown(x, 4) - Complex(1);
                if (abs(d) == 0) break;
                Complex dx = f / d;
                x -= dx;
                if (abs(dx) < stop * max1(abs(x))) {
                    ok = true;
                    break;
                }
            }
            if (!ok)
                throw BranchError("root tracking stalled between the anchor and the coefficient");
        }
    }
    if (scaled_residual(normal_form(a), x) > tol)
        throw BranchError("tracked root failed the residual check");
    return x;
}

MainTheoremReport main_theorem_pipeline(const Nome& nome, const NumericContext& ctx) {
    unsigned wd = ctx.working_digits + kGuard;
    ScopedDigits guard(wd);
    Complex q = lift(nome.q);
    if (!(q.re > 0) || !(q.re < 1) || !(bmp::abs(q.im) == 0))
        throw DomainError("validation sweep expects a real nome in (0,1)");
    Real r = nome.r ? lift(*nome.r) : bmp::pow(bmp::log(q.re) / const_pi(), 2);
    if (!(r > 15) || !(r < 25))
        throw DomainError("the composite chains are branch-tuned for 15 < r < 25");

    MainTheoremReport rep;
    rep.r = r;

    Nome qn(q, r);
    rep.u = rrcf(qn, suggested_rrcf_depth(qn, ctx), ctx).v;
    const Complex& u = rep.u;

    rep.t = t3(t2(t1(u, ctx), ctx), TBranch::t34, ctx);
    rep.l = t3(t2(t1(t4(u, ctx), ctx), ctx), TBranch::t33, ctx);
    rep.m_neg = t3(t2(t1(t4(t6(u, ctx), ctx), ctx), ctx), TBranch::t34, ctx);
    Complex j_deep = t2(t1(t4(t6(t7(u, ctx), ctx), ctx), ctx), ctx);
    Complex c1_direct = t5(t3(j_deep, TBranch::t33, ctx), ctx);

    AscentState st = psi_state(rep.t, rep.l, ctx);
    rep.alpha = st.alpha;
    rep.p = st.p;
    rep.s = st.s;
    rep.Y = st.Y;
    rep.k_up = st.k_up;

    const Complex& t = rep.t;
    Complex tp = sqrt(Complex(1) - t * t);
    rep.a = Complex(2) * (Complex(1) + t * t) /
            (Complex(bmp::pow(Real(5), Real(5) / 4)) * sqrt(t) * tp);

    Complex denom = Complex(2 * bmp::pow(Real(5), Real(3) / 4)) * quarter(t) * tp;
    Complex re_m = Complex(quarter(rep.m_neg).re);
    auto assemble = [&](const Complex& c1v) {
        Complex root_c = sqrt(Complex(1) - c1v * c1v);
        Complex w = (Complex(1) - root_c) / (Complex(1) + root_c);
        return Complex(-4) * (quarter(rep.k_up) + quarter(rep.l)) * re_m *
               Complex(quarter(w).im) / denom;
    };
    auto score = [&](const Complex& x) { return abs(pown(x, 5) - x - rep.a); };
    // The normal form carries an open sign; at CM points the quartic root of
    // w sits on its cut and rounding junk would otherwise decide the branch,
    // so both signs are scored and the residual picks.
    auto pick = [&](const Complex& c1v) {
        Complex x = assemble(c1v);
        Real sp = score(x), sn = score(-x);
        return sp <= sn ? std::make_pair(x, sp) : std::make_pair(-x, sn);
    };

    // The deep tenth-root chain can land on a neighbouring branch for the
    // lower part of the window; arbitrate over the full modulus orbit with
    // the normal-form residual when the direct composition misses.
    Complex best_c1 = c1_direct;
    auto [best_x, best] = pick(c1_direct);
    if (best > bmp::sqrt(lift(ctx.tol))) {
        for (const Complex& cand : modulus_candidates_from_j(j_deep, ctx)) {
            Complex c1v = t5(cand, ctx);
            auto [x, sc] = pick(c1v);
            if (sc < best) {
                best = sc;
                best_x = x;
                best_c1 = c1v;
            }
        }
        rep.deep_orbit_fallback = true;
    }
    rep.c1 = best_c1;
    rep.root = best_x;
    rep.residual_minus = best;
    rep.residual_plus = abs(pown(best_x, 5) - best_x + rep.a);

    auto sm_at = [&](const Complex& qq) { return singular_modulus(Nome(qq), ctx); };
    Complex q5 = pow(q, Real(1) / 5);
    Complex q10 = pow(q, Real(1) / 10);
    Complex rot = polar(Real(1), 6 * const_pi() / 5);
    rep.t_direct_err = abs(rep.t - sm_at(q));
    rep.l_direct_err = abs(rep.l - sm_at(q5));
    rep.m_neg_direct_err = abs(rep.m_neg - sm_at(q5 * rot));
    rep.c1_direct_err = abs(rep.c1 - sm_at(q10 * rot));

    Complex tau(Real(0), bmp::sqrt(r));
    rep.phi_alt_deviation =
        abs(hermite_phi_product(tau, ctx) - hermite_phi_alternative(tau, ctx));
    return rep;
}

}  // namespace quintic
