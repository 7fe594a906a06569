#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quintic/special_functions.hpp"

using namespace quintic;

namespace {

// Independent oracle: tanh-sinh quadrature of the defining integral
// K(k) = int_0^{pi/2} dphi / sqrt(1 - k^2 sin^2 phi). Fixed fine step, good to
// well beyond 60 digits for these smooth integrands.
Real K_quadrature(const Real& k, unsigned digits) {
    ScopedDigits g(digits);
    Real k2 = lift(k) * lift(k);
    Real pi = const_pi();
    auto f = [&](const Real& phi) {
        Real s = bmp::sin(phi);
        return 1 / bmp::sqrt(1 - k2 * s * s);
    };
    Real eps = pow10(-static_cast<long>(digits) - 8);
    Real h = Real(1) / 256;
    Real sum = 0;
    for (long i = -6 * 256; i <= 6 * 256; ++i) {
        Real t = h * i;
        Real sh = (pi / 2) * bmp::sinh(t);
        Real ch = bmp::cosh(sh);
        Real w = (pi / 2) * bmp::cosh(t) / (ch * ch);
        if (w < eps) continue;
        Real phi = (pi / 4) * (bmp::tanh(sh) + 1);
        sum += w * f(phi);
    }
    return sum * h * (pi / 4);
}

Real closed_form_k(int r) {
    // classical singular moduli, entered digit-for-digit from radicals
    switch (r) {
        case 1: return 1 / bmp::sqrt(Real(2));
        case 2: return bmp::sqrt(Real(2)) - 1;
        case 3: return bmp::sqrt(2 - bmp::sqrt(Real(3))) / 2;
        case 4: return 3 - 2 * bmp::sqrt(Real(2));
        case 5: {
            Real s5 = bmp::sqrt(Real(5));
            return bmp::sqrt((9 + 4 * s5 - 2 * bmp::sqrt(38 + 17 * s5)) / (18 + 8 * s5));
        }
        default: throw DomainError("no closed form wired");
    }
}

Complex rrcf_at(const Real& q, const NumericContext& ctx) {
    Nome n{Complex(q)};
    return rrcf(n, suggested_rrcf_depth(n, ctx), ctx).v;
}

}  // namespace

TEST_CASE("theta series reproduce the classical moduli") {
    NumericContext ctx(50);
    ScopedDigits g(50);
    CHECK(abs(theta(3, Nome(Complex(0)), ctx) - Complex(1)) == 0);

    Nome q1 = Nome::from_r(Real(1), ctx);
    Complex ratio1 = theta(2, q1, ctx) / theta(3, q1, ctx);
    CHECK(abs(ratio1 * ratio1 - Complex(closed_form_k(1))) < ctx.tol);

    Nome q4 = Nome::from_r(Real(4), ctx);
    Complex ratio4 = theta(2, q4, ctx) / theta(3, q4, ctx);
    CHECK(abs(ratio4 * ratio4 - Complex(closed_form_k(4))) < ctx.tol);

    CHECK_THROWS_AS(theta(3, Nome(Complex(Real(1), Real(1) / 10)), ctx), DomainError);
    CHECK_THROWS_AS(theta(5, Nome(Complex(Real(1) / 10)), ctx), DomainError);
}

TEST_CASE("jacobi identity as an internal health check") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    std::vector<Complex> samples = {Complex(Real(1) / 10), Complex(Real(3) / 10),
                                    Complex(Real(1) / 2), Complex(Real(1) / 5, Real(7) / 20),
                                    Complex(Real(-3) / 10, Real(1) / 10)};
    for (const auto& qv : samples) {
        Nome q{qv};
        Complex t2 = theta(2, q, ctx), t3 = theta(3, q, ctx), t4 = theta(4, q, ctx);
        CHECK(abs(pown(t3, 4) - pown(t2, 4) - pown(t4, 4)) < ctx.tol);
    }
}

TEST_CASE("singular modulus closed forms and small-nome behavior") {
    NumericContext ctx(50);
    ScopedDigits g(50);
    CHECK(abs(singular_modulus(Nome::from_r(Real(4), ctx), ctx) - Complex(closed_form_k(4))) <
          ctx.tol);
    CHECK(abs(singular_modulus(Nome::from_r(Real(3), ctx), ctx) - Complex(closed_form_k(3))) <
          ctx.tol);

    // leading behavior 4 sqrt(q)
    Real q("1e-12");
    Complex k = singular_modulus(Nome(Complex(q)), ctx);
    CHECK(abs(k / Complex(4 * bmp::sqrt(q)) - Complex(1)) < pow10(-10));
}

TEST_CASE("complete elliptic integral against the quadrature oracle") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    CHECK(abs(complete_K(Complex(0), ctx) - Complex(const_pi() / 2)) < ctx.tol);

    // one modulus on the series side of the switch, one on the AGM side
    for (const char* ks : {"0.3", "0.70710678118654752440084436210484903928"}) {
        Real k(ks);
        Complex got = complete_K(Complex(k), ctx);
        Real want = K_quadrature(k, 45);
        CHECK(bmp::abs(got.re - want) < pow10(-38));
        CHECK(bmp::abs(got.im) < ctx.tol);
    }

    // the two evaluation methods agree where their domains overlap
    for (const char* ks : {"0.45", "0.499", "0.5"}) {
        Real k(ks);
        Complex series_side = complete_K(Complex(k), ctx);
        Real agm_eps = pow10(-50);
        Real a(1), b = bmp::sqrt((1 - k) * (1 + k));
        for (int i = 0; i < 200 && bmp::abs(a - b) > agm_eps * a; ++i) {
            Real am = (a + b) / 2;
            b = bmp::sqrt(a * b);
            a = am;
        }
        CHECK(bmp::abs(series_side.re - const_pi() / (2 * a)) < pow10(-40));
    }

    CHECK_THROWS_AS(complete_K(Complex(1), ctx), DivergenceError);
    CHECK_THROWS_AS(complete_K(Complex(Real(3) / 2), ctx), DomainError);
}

TEST_CASE("period ratio sqrt(2) at the second singular value") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    Real k2 = closed_form_k(2);
    Real kp2 = bmp::sqrt((1 - k2) * (1 + k2));
    Complex ratio = complete_K(Complex(kp2), ctx) / complete_K(Complex(k2), ctx);
    CHECK(abs(ratio - Complex(bmp::sqrt(Real(2)))) < ctx.tol);
}

TEST_CASE("modulus_from_r inverts the period ratio") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    for (int r : {1, 4, 5}) {
        EllipticContext ec = modulus_from_r(Real(r), ctx);
        CHECK(abs(ec.k - Complex(closed_form_k(r))) < ctx.tol);
        CHECK(abs(ec.k * ec.k + ec.k_prime * ec.k_prime - Complex(1)) < ctx.tol);
        CHECK(bmp::abs(ec.ratio * ec.ratio - r) < ctx.tol);
    }

    // doubled-parameter relation: k_{4r} = (1 - k'_r)/(1 + k'_r)
    for (int r : {1, 2, 3, 5}) {
        EllipticContext ec = modulus_from_r(Real(r), ctx);
        EllipticContext ec4 = modulus_from_r(Real(4 * r), ctx);
        Complex want = (Complex(1) - ec.k_prime) / (Complex(1) + ec.k_prime);
        CHECK(abs(ec4.k - want) < ctx.tol);
    }

    // tripled-parameter relation: sqrt(k k_9) + sqrt(k' k'_9) = 1
    for (int r : {1, 2}) {
        EllipticContext ec = modulus_from_r(Real(r), ctx);
        EllipticContext ec9 = modulus_from_r(Real(9 * r), ctx);
        CHECK(abs(sqrt(ec.k * ec9.k) + sqrt(ec.k_prime * ec9.k_prime) - Complex(1)) < ctx.tol);
    }

    CHECK_THROWS_AS(modulus_from_r(Real(0), ctx), DomainError);
}

TEST_CASE("fifth-degree modular relations between k_r and k_25r") {
    NumericContext ctx(80);
    ScopedDigits g(80);
    EllipticContext e1 = modulus_from_r(Real(1), ctx);
    EllipticContext e25 = modulus_from_r(Real(25), ctx);
    Complex kk = e1.k * e25.k;
    Complex kpkp = e1.k_prime * e25.k_prime;
    Complex resid = kk + kpkp + pow(Complex(2), Real(5) / 3) * pow(kk * kpkp, Real(1) / 3) -
                    Complex(1);
    CHECK(abs(resid) < ctx.tol);

    // depressed form in fourth roots
    Complex u = pow(e25.k, Real(1) / 4), v = pow(e1.k, Real(1) / 4);
    Complex dep = pown(u, 6) - pown(v, 6) + 5 * u * u * v * v * (u * u - v * v) +
                  4 * u * v * (Complex(1) - pown(u * v, 4));
    CHECK(abs(dep) < ctx.tol);
}

TEST_CASE("deep singular parameter escalates precision automatically") {
    NumericContext ctx(40);
    EllipticContext ec = modulus_from_r(Real(625), ctx);
    ScopedDigits g(80);
    CHECK(ec.k.re > 0);
    CHECK(ec.k.re < pow10(-15));
    CHECK(bmp::abs(ec.ratio - 25) < pow10(-35));
    Complex k_theta = singular_modulus(Nome::from_r(Real(625), ctx), ctx);
    CHECK(abs(ec.k / k_theta - Complex(1)) < pow10(-10));
}

TEST_CASE("continued fraction closed form and asymptotics") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    Nome q{Complex(bmp::exp(-2 * const_pi()))};
    Complex R = rrcf(q, suggested_rrcf_depth(q, ctx), ctx).v;
    Real s5 = bmp::sqrt(Real(5));
    Real want = -(1 + s5) / 2 + bmp::sqrt((5 + s5) / 2);
    CHECK(abs(R - Complex(want)) < ctx.tol);

    // small nome: R ~ q^{1/5}
    Real tiny("1e-10");
    Complex Rt = rrcf(Nome(Complex(tiny)), 64, ctx).v;
    CHECK(abs(Rt / Complex(bmp::pow(tiny, Real(1) / 5)) - Complex(1)) < pow10(-7));

    // stability under depth doubling
    Nome q2{Complex(Real(1) / 5)};
    unsigned long d = suggested_rrcf_depth(q2, ctx);
    Complex a = rrcf(q2, d, ctx).v;
    Complex b = rrcf(q2, 2 * d, ctx).v;
    CHECK(abs(a - b) < ctx.tol);

    CHECK_THROWS_AS(rrcf(q2, 10, ctx), PrecisionError);
    CHECK_THROWS_AS(rrcf(Nome(Complex(2)), 100, ctx), DomainError);
}

TEST_CASE("continued fraction modular equations of degree 2, 3, 5") {
    NumericContext ctx(42);
    ScopedDigits g(42);
    for (const char* qs : {"0.05", "0.1", "0.2"}) {
        Real q(qs);
        Complex R = rrcf_at(q, ctx);
        Complex R2 = rrcf_at(q * q, ctx);
        Complex R3 = rrcf_at(q * q * q, ctx);
        Complex R15 = rrcf_at(bmp::pow(q, Real(1) / 5), ctx);

        Complex lhs2 = (R2 - R * R) / (R2 + R * R);
        CHECK(abs(lhs2 - R * R2 * R2) < ctx.tol);

        Complex lhs3 = (R3 - pown(R, 3)) * (Complex(1) + R * pown(R3, 3));
        CHECK(abs(lhs3 - 3 * R * R * R3 * R3) < ctx.tol);

        Complex num = Complex(1) - 2 * R + 4 * R * R - 3 * pown(R, 3) + pown(R, 4);
        Complex den = Complex(1) + 3 * R + 4 * R * R + 2 * pown(R, 3) + pown(R, 4);
        CHECK(abs(pown(R15, 5) - R * num / den) < ctx.tol);
    }
}

TEST_CASE("eta product limit and octic power identity") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    CHECK(abs(dedekind_eta(Complex(Real(0), Real(40)), ctx) - Complex(1)) < ctx.tol);
    CHECK_THROWS_AS(dedekind_eta(Complex(Real(1), Real(0)), ctx), DomainError);

    // eta(i)^8 against the modulus/period expression at the first singular value
    Complex eta_i = dedekind_eta(Complex(Real(0), Real(1)), ctx);
    Real q = bmp::exp(-const_pi());
    Real k1 = closed_form_k(1);
    Real kp1 = bmp::sqrt((1 - k1) * (1 + k1));
    Complex K1 = complete_K(Complex(k1), ctx);
    Complex rhs = Complex(bmp::pow(Real(2), Real(8) / 3) / bmp::pow(const_pi(), 4) *
                          bmp::pow(q, Real(-1) / 3) * bmp::pow(k1, Real(2) / 3) *
                          bmp::pow(kp1, Real(8) / 3)) *
                  pown(K1, 4);
    Complex lhs = pown(eta_i, 8);
    CHECK(abs(lhs - rhs) / abs(rhs) < ctx.tol);
}

TEST_CASE("klein invariant routes agree") {
    NumericContext ctx(45);
    ScopedDigits g(45);
    CHECK(abs(j_from_modulus(Complex(closed_form_k(1)), ctx) - Complex(1728)) < pow10(-38));

    // symmetric under k <-> k'
    Complex k(Real(3) / 10);
    Complex kp = sqrt(Complex(1) - k * k);
    CHECK(abs(j_from_modulus(k, ctx) - j_from_modulus(kp, ctx)) < pow10(-35));

    CHECK_THROWS_AS(j_from_modulus(Complex(0), ctx), PoleError);
    CHECK_THROWS_AS(j_from_modulus(Complex(1), ctx), PoleError);

    // eta-quotient route with the compensating q^{+-1/24} factors
    auto j_eta_route = [&](const Real& r) {
        Real sq = bmp::sqrt(r);
        Complex tau(Real(0), sq);
        Real q = bmp::exp(-const_pi() * sq);
        Complex e1 = dedekind_eta(tau, ctx), e2 = dedekind_eta(2 * tau, ctx);
        Complex a = Complex(bmp::pow(q, Real(-1) / 24)) * e1 / e2;
        Complex b = Complex(bmp::pow(q, Real(1) / 24)) * e2 / e1;
        return pown(pown(a, 16) + 16 * pown(b, 8), 3);
    };
    CHECK(abs(j_eta_route(Real(1)) - Complex(1728)) < pow10(-35));
    CHECK(abs(j_eta_route(Real(2)) - Complex(8000)) < pow10(-32));
    CHECK(abs(j_from_modulus(Complex(closed_form_k(2)), ctx) - Complex(8000)) < pow10(-32));
    CHECK(abs(j_from_modulus(Complex(closed_form_k(4)), ctx) - Complex(66 * 66 * 66)) <
          pow10(-30));
}

TEST_CASE("identity residuals shrink with precision") {
    auto jacobi_resid = [](unsigned digits) {
        NumericContext ctx(digits);
        ScopedDigits g(digits);
        Nome q{Complex(Real(3) / 10)};
        Complex t2 = theta(2, q, ctx), t3 = theta(3, q, ctx), t4 = theta(4, q, ctx);
        return abs(pown(t3, 4) - pown(t2, 4) - pown(t4, 4));
    };
    Real r30 = jacobi_resid(30), r60 = jacobi_resid(60);
    CHECK((r60 < r30 / 10 || r30 < pow10(-35)));

    auto doubling_resid = [](unsigned digits) {
        NumericContext ctx(digits);
        ScopedDigits g(digits);
        EllipticContext e2 = modulus_from_r(Real(2), ctx);
        EllipticContext e8 = modulus_from_r(Real(8), ctx);
        Complex want = (Complex(1) - e2.k_prime) / (Complex(1) + e2.k_prime);
        return abs(e8.k - want);
    };
    Real d30 = doubling_resid(30), d60 = doubling_resid(60);
    CHECK((d60 < d30 / 10 || d30 < pow10(-35)));
}
