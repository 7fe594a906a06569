#include "quintic/special_functions.hpp"

#include <vector>

namespace quintic {

namespace {

constexpr unsigned long kSeriesCap = 20'000'000;

// Shared truncation policy: once the next term drops below tol relative to the
// running sum, take a fixed 8-term safety margin and stop.
struct TailGate {
    long countdown = -1;

    // Returns true when summation should stop.
    bool done(const Real& term_mag, const Real& sum_mag, const Real& tol) {
        if (countdown < 0 && term_mag < tol * sum_mag) countdown = 8;
        if (countdown >= 0 && --countdown < 0) return true;
        return false;
    }
};

Real agm_eps(unsigned digits) { return pow10(-static_cast<long>(digits) + 2); }

// AGM(1, b) for real b in (0, 1]. Terminates on the target eps or on hitting
// the rounding floor (the gap stops shrinking).
Real agm_real(Real b, const Real& eps) {
    Real a(1);
    Real prev_gap = 10;
    for (int i = 0; i < 500; ++i) {
        Real gap = bmp::abs(a - b);
        if (gap < eps * a || (i > 3 && gap >= prev_gap)) return a;
        prev_gap = gap;
        Real am = (a + b) / 2;
        b = bmp::sqrt(a * b);
        a = am;
    }
    throw PrecisionError("AGM did not converge");
}

}  // namespace

Nome Nome::from_r(const Real& r, const NumericContext& ctx) {
    if (!(r > 0)) throw DomainError("r must be positive");
    NumericContext local = NumericContext::for_r(r, ctx.working_digits);
    ScopedDigits guard(local.working_digits);
    Real rr = lift(r);
    return Nome(Complex(bmp::exp(-const_pi() * bmp::sqrt(rr))), rr);
}

Complex theta(int selector, const Nome& nome, const NumericContext& ctx) {
    if (selector < 2 || selector > 4) throw DomainError("theta selector must be 2, 3 or 4");
    ScopedDigits guard(ctx.working_digits);
    Complex q = lift(nome.q);
    Real aq = abs(q);
    if (aq >= 1) throw DomainError("theta needs |q| < 1");
    if (aq == 0) return selector == 2 ? Complex(0) : Complex(1);
    Real tol = lift(ctx.tol);
    Complex qsq = q * q;

    if (selector == 2) {
        // 2 q^{1/4} sum_{n>=0} q^{n(n+1)}
        Complex sum(1);
        Complex cur(1);
        Complex step = qsq;
        TailGate gate;
        for (unsigned long n = 1; n <= kSeriesCap; ++n) {
            cur *= step;
            step *= qsq;
            sum += cur;
            if (gate.done(abs(cur), abs(sum), tol)) return 2 * pow(q, Real(1) / 4) * sum;
        }
        throw PrecisionError("theta series exceeded iteration cap");
    }

    // 1 + 2 sum_{n>=1} (+-1)^n q^{n^2}
    Complex sum(1);
    Complex cur = q;
    Complex step = q * qsq;
    TailGate gate;
    bool alternating = (selector == 4);
    for (unsigned long n = 1; n <= kSeriesCap; ++n) {
        Complex term = 2 * cur;
        if (alternating && (n & 1)) term = -term;
        sum += term;
        if (gate.done(abs(cur), abs(sum), tol)) return sum;
        cur *= step;
        step *= qsq;
    }
    throw PrecisionError("theta series exceeded iteration cap");
}

Complex singular_modulus(const Nome& q, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits);
    Complex t2 = theta(2, q, ctx);
    Complex t3 = theta(3, q, ctx);
    return (t2 * t2) / (t3 * t3);
}

Complex complete_K(const Complex& x, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits);
    Complex z = lift(x);
    Real tol = lift(ctx.tol);
    if (z.im == 0) {
        if (bmp::abs(z.re) == 1) throw DivergenceError("K diverges at x = +-1");
        if (bmp::abs(z.re) > 1) throw DomainError("x^2 lies on the branch cut [1, inf)");
    }

    if (abs(z) <= Real(1) / 2) {
        // (pi/2) 2F1(1/2,1/2;1;x^2); term ratio ((2n+1)/(2n+2))^2 x^2
        Complex zsq = z * z;
        Complex term(1), sum(1);
        TailGate gate;
        for (unsigned long n = 0; n <= kSeriesCap; ++n) {
            Real ratio = Real(2 * n + 1) / Real(2 * n + 2);
            term *= zsq * Complex(ratio * ratio);
            sum += term;
            if (gate.done(abs(term), abs(sum), tol)) return Complex(const_pi() / 2) * sum;
        }
        throw PrecisionError("K series exceeded iteration cap");
    }

    // K = pi / (2 AGM(1, k')), geometric mean kept on the side of the
    // arithmetic mean. Stops at tol or at the rounding floor.
    Complex a(1), b = sqrt(Complex(1) - z * z);
    Real prev_gap = 10;
    for (int i = 0; i < 500; ++i) {
        Real gap = abs(a - b);
        if (gap < tol * abs(a) || (i > 3 && gap >= prev_gap)) return Complex(const_pi() / 2) / a;
        prev_gap = gap;
        Complex am = (a + b) / 2;
        Complex gm = sqrt(a * b);
        if (abs(am - gm) > abs(am + gm)) gm = -gm;
        a = am;
        b = gm;
    }
    throw PrecisionError("AGM did not converge");
}

EllipticContext modulus_from_r(const Real& r, const NumericContext& ctx) {
    if (!(r > 0)) throw DomainError("r must be positive");
    NumericContext local = NumericContext::for_r(r, ctx.working_digits);
    unsigned digits = local.working_digits;
    ScopedDigits guard(digits);
    Real rr = lift(r);
    Real target = bmp::sqrt(rr);
    Real eps = agm_eps(digits);

    // K(k')/K(k) = AGM(1, k') / AGM(1, k); feeding each AGM the bisection
    // variable directly avoids the complement-of-complement cancellation that
    // wipes out deep moduli.
    auto ratio_at = [&](const Real& x) {
        Real xp = bmp::sqrt((1 - x) * (1 + x));
        return agm_real(xp, eps) / agm_real(x, eps);
    };

    // K(k')/K(k) decreases strictly from +inf to 0 on (0,1): bisect.
    Real lo = pow10(-static_cast<long>(digits) / 2);
    Real hi = 1 - lo;
    long steps = static_cast<long>(digits * 3.33) + 8;
    for (long i = 0; i < steps; ++i) {
        Real mid = (lo + hi) / 2;
        if (ratio_at(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    Real k = (lo + hi) / 2;

    EllipticContext out;
    out.r = rr;
    out.k = Complex(k);
    out.k_prime = Complex(bmp::sqrt((1 - k) * (1 + k)));
    out.q = Complex(bmp::exp(-const_pi() * target));
    out.ratio = ratio_at(k);
    return out;
}

unsigned long suggested_rrcf_depth(const Nome& q, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits);
    Real aq = abs(lift(q.q));
    if (aq == 0) return 1;
    if (aq >= 1) throw DomainError("rrcf needs |q| < 1");
    Real need = (Real(ctx.working_digits) + 10) * bmp::log(Real(10)) / -bmp::log(aq);
    long depth = bmp::ceil(need).convert_to<long>() + 8;
    return depth < 16 ? 16 : static_cast<unsigned long>(depth);
}

RRCFValue rrcf(const Nome& nome, unsigned long depth, const NumericContext& ctx) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    ScopedDigits guard(ctx.working_digits);
    Complex q = lift(nome.q);
    Real aq = abs(q);
    if (aq >= 1) throw DomainError("rrcf needs |q| < 1");
    if (aq == 0) return {Complex(0), nome};
    if (depth > 100'000'000) throw PrecisionError("depth out of range");

    // Truncating the fraction at level N perturbs the value at the q^N scale.
    Real tol = lift(ctx.tol);
    Real tail = bmp::exp(Real(static_cast<long>(depth)) * bmp::log(aq));
    if (tail >= tol) throw PrecisionError("depth too shallow for the requested tolerance");

    std::vector<Complex> qn(depth + 1);
    qn[1] = q;
    for (unsigned long n = 2; n <= depth; ++n) qn[n] = qn[n - 1] * q;

    Complex f(1);
    for (unsigned long n = depth; n >= 1; --n) f = Complex(1) + qn[n] / f;
    return {pow(q, Real(1) / 5) / f, nome};
}

Complex dedekind_eta(const Complex& tau, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits);
    Complex t = lift(tau);
    if (!(t.im > 0)) throw DomainError("eta needs Im(tau) > 0");
    Complex q = exp(Complex(Real(0), const_pi()) * t);
    Real tol = lift(ctx.tol);

    Complex prod(1);
    Complex cur = q;
    TailGate gate;
    for (unsigned long n = 1; n <= kSeriesCap; ++n) {
        prod *= Complex(1) - cur;
        // factors approach 1 at the |q^n| scale, so gate on that directly
        if (gate.done(abs(cur), Real(1), tol)) return prod;
        cur *= q;
    }
    throw PrecisionError("eta product exceeded iteration cap");
}

Complex j_from_modulus(const Complex& k, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits);
    Complex kk = lift(k);
    Complex k2 = kk * kk;
    Complex kp2 = Complex(1) - k2;
    Complex den = k2 * k2 * kp2 * kp2;
    if (den == Complex(0)) throw PoleError("j has poles at k in {0, +-1}");
    Complex num = 256 * pown(k2 + kp2 * kp2, 3);
    return num / den;
}

}  // namespace quintic
