#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quintic/bring.hpp"
#include "quintic/oracle.hpp"

#include <random>
#include <vector>

using namespace quintic;

namespace {

Real bring_residual(const Complex& x, const Complex& t) {
    return abs((pown(x, 4) + Complex(1)) * x + t);
}

Real rmax(const Real& a, const Real& b) { return a > b ? a : b; }

// greedy multiset match: every a-element pairs with a distinct b-element
bool multiset_match(std::vector<Complex> a, std::vector<Complex> b, const Real& tol) {
    if (a.size() != b.size()) return false;
    for (const Complex& x : a) {
        Real best(-1);
        std::size_t at = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            Real d = abs(b[i] - x);
            if (best < 0 || d < best) {
                best = d;
                at = i;
            }
        }
        if (!(best < tol)) return false;
        b.erase(b.begin() + static_cast<long>(at));
    }
    return true;
}

}  // namespace

TEST_CASE("principal root: series region") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    SeriesDiagnostics diag;
    CHECK(abs(br(Complex(0), ctx, &diag)) == 0);
    CHECK(diag.converged);

    // leading behavior x = -t + t^5 - 5 t^9 + ...
    Complex x01 = br(Complex(Real(1) / 10), ctx);
    CHECK(bring_residual(x01, Complex(Real(1) / 10)) < ctx.tol);
    CHECK(abs(x01 - Complex(Real("-0.09999"))) < pow10(-8));

    // residuals across the series disk, real and complex arguments
    for (const char* ts : {"0.05", "0.2", "0.35", "0.5"}) {
        Real m{ts};
        for (const Real& arg : {Real(0), Real(1), Real(3)}) {
            Complex t = polar(m, arg);
            Complex x = br(t, ctx, &diag);
            CHECK(bring_residual(x, t) < ctx.tol);
            CHECK(diag.method == BringMethod::series);
            CHECK(diag.converged);
            CHECK(diag.terms_used > 0);
        }
    }

    // odd symmetry of the branch
    Complex tp{Real(3) / 10, Real(1) / 5};
    CHECK(abs(br(-tp, ctx) + br(tp, ctx)) < ctx.tol);
}

TEST_CASE("principal root: continuation region") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    // closed-form anchor: x^5 + x + 1 = (x^2 + x + 1)(x^3 - x^2 + 1), so the
    // real root comes from the depressed form of the cubic factor
    std::vector<Complex> cubic = solve_cubic(Complex(Real(1) / 9), Complex(Real(-25) / 27), ctx);
    Complex oracle;
    for (const Complex& y : cubic)
        if (bmp::abs(y.im) < lift(ctx.tol)) oracle = y + Complex(Real(1) / 3);
    CHECK(abs(oracle - Complex(Real("-0.7548776662466927600495"))) < pow10(-20));

    SeriesDiagnostics diag;
    Complex x1 = br(Complex(1), ctx, &diag);
    CHECK(abs(x1 - oracle) < ctx.tol);
    CHECK(diag.method == BringMethod::polished_continuation);
    CHECK(diag.converged);

    for (const char* ts : {"0.52", "1.0", "2.0", "5.0", "10.0"}) {
        Real m{ts};
        for (const Real& arg : {Real(0), Real(2), Real(-1)}) {
            Complex t = polar(m, arg);
            CHECK(bring_residual(br(t, ctx), t) < lift(ctx.tol) * m);
        }
    }

    // odd symmetry survives the continuation
    Complex tp{3, 4};
    CHECK(abs(br(-tp, ctx) + br(tp, ctx)) < lift(ctx.tol) * 5);

    // aiming straight at a collision point must fail loudly: there two roots
    // of the quintic meet and the tracked branch is no longer isolated
    Real collide_mag = Real(4) / 5 / bmp::pow(Real(5), Real(1) / 4);
    Complex t_star = polar(collide_mag, 5 * const_pi() / 4);
    CHECK_THROWS_AS(br(t_star, ctx), BranchError);
}

TEST_CASE("series and tracked continuation agree on the overlap") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    Poly base({Complex(0), Complex(1), Complex(0), Complex(0), Complex(0), Complex(1)});
    for (const char* ts : {"0.4", "0.45", "0.5"}) {
        Real m{ts};
        for (const Real& arg : {Real(0), Real("2.2")}) {
            Complex t = polar(m, arg);
            Complex series_x = br(t, ctx);

            // independent track: series seed well inside the disk, then
            // Newton against the target polynomial in small ray steps
            Complex u = t / Complex(m);
            Complex x = br(u * Complex(Real(7) / 20), ctx);
            Real s = Real(7) / 20;
            while (s < m) {
                s = s + Real(1) / 20;
                if (s > m) s = m;
                Poly p = base;
                p.c[0] = u * Complex(s);
                x = newton_polish(p, x, 60, ctx);
            }
            CHECK(abs(series_x - x) < 10 * lift(ctx.tol));
        }
    }
}

TEST_CASE("gamma-ratio series for the trinomial root") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    CHECK(abs(lambert_euler(3, 4, Complex(0), 1, ctx) - Complex(1)) == 0);

    // quadratic case has a closed form: root of x^2 + 2 a x = 1
    Real a{Real(1) / 10};
    Complex want{bmp::sqrt(Real(101) / 100) - a};
    CHECK(abs(lambert_euler(1, 2, Complex(a), 1, ctx) - want) < ctx.tol);
    // and the n parameter returns the n-th power of the same root
    CHECK(abs(lambert_euler(1, 2, Complex(a), 3, ctx) - pown(want, 3)) < ctx.tol);

    // (p,q) = (5,1) linearizes the quintic: x + t^4 x^5 = 1 maps to the
    // principal root through y = -t x
    Complex t{Real(1) / 5};
    Complex via_series = -t * lambert_euler(5, 1, pown(t, 4), 1, ctx);
    CHECK(abs(via_series - br(t, ctx)) < ctx.tol);

    // (p,q) = (4,5) reaches a different (complex) root of the quintic, so
    // only the defining-equation residual is checked
    for (const char* ts : {"1.0", "0.8", "0.6"}) {
        Real tv{ts};
        Complex c = pow(Complex(-1 / tv), Real(1) / 5);
        Complex av = -pown(c, 4) / 5;
        Complex v = lambert_euler(4, 5, av, 1, ctx);
        CHECK(abs(5 * av * pown(v, 4) + pown(v, 5) - Complex(1)) < ctx.tol);
        Complex x = Complex(1) / (c * v);
        CHECK(bring_residual(x, Complex(tv)) < ctx.tol);
    }
    // closer to the origin the same parameterization leaves the disk of
    // convergence and the divergence must be reported, not averaged over
    Complex c02 = pow(Complex(-5), Real(1) / 5);
    CHECK_THROWS_AS(lambert_euler(4, 5, -pown(c02, 4) / 5, 1, ctx), DivergenceError);

    CHECK_THROWS_AS(lambert_euler(1, 0, Complex(Real(1) / 10), 1, ctx), DomainError);
    CHECK_THROWS_AS(lambert_euler(1, 2, Complex(Real(1) / 10), 0, ctx), DomainError);
}

TEST_CASE("nested radical iteration") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    SeriesDiagnostics diag;
    CHECK(abs(nested_radical(Complex(0), Complex(-1), 50, ctx, &diag) - Complex(1)) == 0);
    CHECK(diag.converged);
    CHECK(diag.method == BringMethod::nested_radical);

    // x^5 + x - 3: the iteration settles on the real root, which equals the
    // principal branch at the mirrored argument
    Complex x = nested_radical(Complex(1), Complex(-3), 500, ctx, &diag);
    CHECK(bring_residual(x, Complex(-3)) < lift(ctx.tol) * 3);
    CHECK(abs(x + br(Complex(3), ctx)) < ctx.tol);
    CHECK(diag.terms_used < 200);

    // zero constant term: the fixed point is the zero root
    CHECK(abs(nested_radical(Complex(2), Complex(0), 50, ctx)) == 0);

    // the same map with A = B = 1 never settles; say so honestly
    CHECK_THROWS_AS(nested_radical(Complex(1), Complex(1), 3000, ctx), DivergenceError);
}

TEST_CASE("newton polish") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    // an exact root comes back unchanged
    Poly quad({Complex(-2), Complex(0), Complex(1)});
    Complex s2{bmp::sqrt(Real(2))};
    CHECK(abs(newton_polish(quad, s2, 32, ctx) - s2) == 0);

    // a coarse seed improves by many orders
    Complex t{Real(1) / 2};
    Poly p({t, Complex(1), Complex(0), Complex(0), Complex(0), Complex(1)});
    Complex rough = br(t, ctx) * Complex(1 + pow10(-12));
    Real before = abs(eval(p, rough));
    Complex polished = newton_polish(p, rough, 32, ctx);
    Real after = abs(eval(p, polished));
    CHECK(after * pow10(6) < before);
    CHECK(after < lift(ctx.tol));

    // converges to the closed-form cubic root from a nearby start
    Poly cubic({Complex(1), Complex(0), Complex(-1), Complex(1)});
    std::vector<Complex> ys = solve_cubic(Complex(Real(1) / 9), Complex(Real(-25) / 27), ctx);
    Complex oracle;
    for (const Complex& y : ys)
        if (bmp::abs(y.im) < lift(ctx.tol)) oracle = y + Complex(Real(1) / 3);
    CHECK(abs(newton_polish(cubic, Complex(Real(-3) / 4), 64, ctx) - oracle) < ctx.tol);

    // vanishing derivative with a nonzero residual is an error
    Poly flat({Complex(1), Complex(0), Complex(1)});
    CHECK_THROWS_AS(newton_polish(flat, Complex(0), 32, ctx), DivergenceError);

    // iteration budget exhausted: best iterate returned, flag lowered
    bool ok = true;
    newton_polish(p, Complex(50, 50), 1, ctx, &ok);
    CHECK(!ok);
}

TEST_CASE("all five roots") {
    ScopedDigits guard(60);
    NumericContext ctx(40);

    // t = 0 factorizes by inspection: x (x^4 + 1)
    std::vector<Complex> r0 = all_roots(BringForm{Complex(0)}, ctx);
    REQUIRE(r0.size() == 5);
    int zeros = 0;
    for (const Complex& r : r0) {
        if (abs(r) < lift(ctx.tol)) {
            ++zeros;
        } else {
            CHECK(abs(pown(r, 4) + Complex(1)) < ctx.tol);
        }
    }
    CHECK(zeros == 1);

    // t = 1 carries the quadratic cofactor x^2 + x + 1
    std::vector<Complex> r1 = all_roots(BringForm{Complex(1)}, ctx);
    Real half{Real(1) / 2};
    Real s3 = bmp::sqrt(Real(3)) / 2;
    for (const Complex& w : {Complex(-half, s3), Complex(-half, -s3), br(Complex(1), ctx)}) {
        Real best(1);
        for (const Complex& r : r1) {
            Real d = abs(r - w);
            if (d < best) best = d;
        }
        CHECK(best < ctx.tol);
    }

    // parity: multisets mirror under t -> -t
    for (const char* ts : {"0.3", "2.0"}) {
        Complex t{Real(ts)};
        std::vector<Complex> plus = all_roots(BringForm{t}, ctx);
        std::vector<Complex> minus = all_roots(BringForm{-t}, ctx);
        for (Complex& r : minus) r = -r;
        CHECK(multiset_match(plus, minus, lift(ctx.tol) * 10));
    }

    // random arguments: residuals, Vieta sums, and the product = -t
    std::mt19937_64 rng(20260819);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Complex t{Real(5 * unit(rng)), Real(5 * unit(rng))};
        std::vector<Complex> roots = all_roots(BringForm{t}, ctx);
        REQUIRE(roots.size() == 5);
        Complex sum(0), prod(1);
        Complex pair_sum(0);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(bring_residual(roots[i], t) < lift(ctx.tol) * rmax(Real(1), abs(t)));
            sum = sum + roots[i];
            prod = prod * roots[i];
            for (std::size_t j = i + 1; j < 5; ++j) pair_sum = pair_sum + roots[i] * roots[j];
        }
        Real scale = rmax(Real(1), abs(t));
        CHECK(abs(sum) < lift(ctx.tol) * scale);
        CHECK(abs(pair_sum) < lift(ctx.tol) * scale);
        CHECK(abs(prod + t) < lift(ctx.tol) * scale);
    }

    // the collision point that defeats single-root tracking still yields a
    // complete root set through the multi-start fallback
    Real collide_mag = Real(4) / 5 / bmp::pow(Real(5), Real(1) / 4);
    Complex t_star = polar(collide_mag, 5 * const_pi() / 4);
    std::vector<Complex> rc = all_roots(BringForm{t_star}, ctx);
    REQUIRE(rc.size() == 5);
    for (const Complex& r : rc) CHECK(bring_residual(r, t_star) < ctx.tol);
    // and it contains the double root pair
    Real closest(1);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            Real d = abs(rc[i] - rc[j]);
            if (d < closest) closest = d;
        }
    CHECK(closest < pow10(-15));
}
