#pragma once

#include "quintic/precision.hpp"

#include <vector>

namespace quintic {

// Dense univariate polynomial, ascending coefficients: c[0] + c[1] x + ...
struct Poly {
    std::vector<Complex> c;

    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs) : c(std::move(coeffs)) {}

    static Poly from_descending(std::vector<Complex> d) {
        std::vector<Complex> a(d.rbegin(), d.rend());
        return Poly(std::move(a));
    }

    long degree() const {
        for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
            if (!(c[i].re == 0 && c[i].im == 0)) return i;
        return -1;
    }
};

inline Complex eval(const Poly& p, const Complex& x) {
    Complex acc(0);
    for (long i = static_cast<long>(p.c.size()) - 1; i >= 0; --i) acc = acc * x + p.c[i];
    return acc;
}

inline Poly derivative(const Poly& p) {
    if (p.c.size() <= 1) return Poly({Complex(0)});
    std::vector<Complex> d(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) d[i - 1] = Complex(Real(static_cast<long>(i))) * p.c[i];
    return Poly(std::move(d));
}

// Synthetic division by (x - root); the remainder is dropped.
inline Poly deflate(const Poly& p, const Complex& root) {
    long n = p.degree();
    if (n < 1) return Poly({Complex(0)});
    std::vector<Complex> q(static_cast<size_t>(n));
    Complex carry = p.c[static_cast<size_t>(n)];
    for (long i = n - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = p.c[static_cast<size_t>(i)] + carry * root;
    }
    return Poly(std::move(q));
}

inline Poly monic(const Poly& p) {
    long n = p.degree();
    if (n < 0) throw DomainError("zero polynomial");
    std::vector<Complex> m(p.c.begin(), p.c.begin() + n + 1);
    Complex lead = m.back();
    for (auto& coeff : m) coeff = coeff / lead;
    return Poly(std::move(m));
}

// |p(x)| normalized by max(1, |x|^deg): keeps residuals comparable for roots of
// any magnitude.
inline Real scaled_residual(const Poly& p, const Complex& x) {
    Real ax = abs(x);
    Real scale = 1;
    long n = p.degree();
    if (ax > 1 && n > 0) scale = bmp::pow(ax, static_cast<int>(n));
    return abs(eval(p, x)) / scale;
}

}  // namespace quintic
