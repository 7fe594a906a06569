#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace quintic {

namespace bmp = boost::multiprecision;

// Variable-precision real. Precision of every freshly constructed value is the
// thread's current default (decimal digits); computations round to that width.
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct PoleError : DomainError {
    using DomainError::DomainError;
};
struct BranchError : DomainError {
    using DomainError::DomainError;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sets the thread's working precision for newly created values; restores the
// previous setting on scope exit. Every public entry point opens one of these.
class ScopedDigits {
  public:
    explicit ScopedDigits(unsigned digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~ScopedDigits() { Real::default_precision(saved_); }
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

  private:
    unsigned saved_;
};

inline Real pow10(long e) { return bmp::pow(Real(10), static_cast<int>(e)); }

// Results of arithmetic take the widest operand precision, not the scope's, so
// narrow inputs would silently cap accuracy. Re-round inputs up at entry
// (value-preserving) and every downstream operation runs at working precision.
inline Real lift(Real x) {
    unsigned d = Real::default_precision();
    if (x.precision() < d) x.precision(d);
    return x;
}

inline Real const_pi() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

// Gamma at a real argument (negative non-integers included).
inline Real gamma_real(const Real& x) {
    Real out;
    mpfr_gamma(out.backend().data(), x.backend().data(), MPFR_RNDN);
    return out;
}

inline Real nearest_integer(const Real& x) {
    Real out;
    mpfr_round(out.backend().data(), x.backend().data());
    return out;
}

// Evaluation context: working precision plus the tolerance identities are
// accepted at. Default tolerance leaves a 6-digit headroom under the precision.
struct NumericContext {
    unsigned working_digits;
    Real tol;

    explicit NumericContext(unsigned digits = 40) : working_digits(validate(digits)) {
        ScopedDigits guard(working_digits);
        tol = pow10(6 - static_cast<long>(working_digits));
    }

    NumericContext(unsigned digits, const Real& tolerance)
        : working_digits(validate(digits)), tol(tolerance) {
        if (!(tol > 0) || !(tol < 1)) throw DomainError("tol must lie in (0, 1)");
    }

    // Deep singular parameters: k_r ~ 4 e^{-pi sqrt(r)/2}, so that scale must be
    // representable with ~30 digits to spare or it drowns in rounding noise.
    // Mirror case r <= 1/100: the complement is the deep one.
    static NumericContext for_r(const Real& r, unsigned digits = 40) {
        unsigned need = validate(digits);
        if (r > 0 && (r >= 100 || r <= Real(1) / 100)) {
            ScopedDigits guard(64);
            Real deep = r >= 100 ? Real(r) : 1 / Real(r);
            Real floor_digits =
                bmp::ceil(const_pi() * bmp::sqrt(deep) / bmp::log(Real(10)) + 30);
            long f = floor_digits.convert_to<long>();
            if (f > 0 && static_cast<unsigned>(f) > need) need = static_cast<unsigned>(f);
        }
        return NumericContext(need);
    }

  private:
    static unsigned validate(unsigned digits) {
        if (digits < 16) throw DomainError("working_digits must be >= 16");
        return digits;
    }
};

// Complex arithmetic over Real. Hand-rolled: std::complex is only specified for
// builtin floating types. Principal branches throughout.
struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(const Real& x) : re(x), im(0) {}
    Complex(Real&& x) : re(std::move(x)), im(0) {}
    Complex(const Real& x, const Real& y) : re(x), im(y) {}
    Complex(int n) : re(n), im(0) {}
    Complex(long n) : re(n), im(0) {}
    Complex(double d) : re(d), im(0) {}
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Complex& operator+=(Complex& a, const Complex& b) { a = a + b; return a; }
inline Complex& operator-=(Complex& a, const Complex& b) { a = a - b; return a; }
inline Complex& operator*=(Complex& a, const Complex& b) { a = a * b; return a; }
inline Complex& operator/=(Complex& a, const Complex& b) { a = a / b; return a; }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

inline Real abs(const Complex& z) { return bmp::hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return bmp::atan2(z.im, z.re); }
inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

// Principal square root, honoring the sign of a zero imaginary part on the cut.
inline Complex sqrt(const Complex& z) {
    if (z.im == 0) {
        if (z.re >= 0) return {bmp::sqrt(z.re), Real(0)};
        return {Real(0), bmp::copysign(bmp::sqrt(-z.re), z.im)};
    }
    Real m = abs(z);
    if (z.re >= 0) {
        Real t = bmp::sqrt((m + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    Real t = bmp::sqrt((m - z.re) / 2);
    return {bmp::abs(z.im) / (2 * t), bmp::copysign(t, z.im)};
}

inline Complex exp(const Complex& z) {
    Real m = bmp::exp(z.re);
    return {m * bmp::cos(z.im), m * bmp::sin(z.im)};
}

inline Complex log(const Complex& z) {
    if (z.re == 0 && z.im == 0) throw DomainError("log of zero");
    return {bmp::log(abs(z)), arg(z)};
}

inline Complex polar(const Real& m, const Real& theta) {
    return {m * bmp::cos(theta), m * bmp::sin(theta)};
}

// Integer power by binary exponentiation; exact branch handling for free.
inline Complex pown(const Complex& z, long n) {
    if (n < 0) return Complex(1) / pown(z, -n);
    Complex result(1);
    Complex base = z;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

// Principal fractional power. Positive real base stays exactly real.
inline Complex pow(const Complex& z, const Real& w) {
    if (z.im == 0 && z.re > 0) return {bmp::pow(z.re, w), Real(0)};
    if (z.re == 0 && z.im == 0) {
        if (w > 0) return Complex(0);
        throw DomainError("zero base, non-positive exponent");
    }
    return exp(Complex(w) * log(z));
}
inline Complex pow(const Complex& z, int n) { return pown(z, n); }
inline Complex pow(const Complex& z, const Complex& w) {
    if (w.im == 0) return pow(z, w.re);
    return exp(w * log(z));
}

inline Complex sinh(const Complex& z) {
    return {bmp::sinh(z.re) * bmp::cos(z.im), bmp::cosh(z.re) * bmp::sin(z.im)};
}

inline Complex asinh(const Complex& z) { return log(z + sqrt(z * z + Complex(1))); }

// All three cube roots, principal first.
inline std::array<Complex, 3> all_cbrt(const Complex& z) {
    Complex p = pow(z, Real(1) / 3);
    Real s3 = bmp::sqrt(Real(3)) / 2;
    Complex w(Real(-1) / 2, s3);
    return {p, p * w, p * conj(w)};
}

inline Complex lift(Complex z) {
    z.re = lift(z.re);
    z.im = lift(z.im);
    return z;
}

inline std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << ", " << z.im << ')';
}

inline std::string to_decimal(const Real& x, unsigned digits) { return x.str(digits); }

}  // namespace quintic
