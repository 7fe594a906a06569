#include "quintic/oracle.hpp"

namespace quintic {

std::vector<Complex> all_roots_reference(const Poly& p, const NumericContext& ctx,
                                         unsigned max_iter) {
    // Extra digits: clustered roots converge linearly and chew through slack.
    ScopedDigits guard(ctx.working_digits + 30);

    long deg = p.degree();
    if (deg < 1) throw DomainError("need degree >= 1");

    std::vector<Complex> c(static_cast<size_t>(deg) + 1);
    for (size_t i = 0; i < c.size(); ++i) c[i] = lift(p.c[i]);
    Poly q{c};
    q = monic(q);
    Poly dq = derivative(q);

    // Cauchy bound: all roots lie in |x| <= 1 + max |c_i|.
    Real bound = 0;
    for (long i = 0; i < deg; ++i) {
        Real a = abs(q.c[static_cast<size_t>(i)]);
        if (a > bound) bound = a;
    }
    bound = bound + 1;

    // Start on a circle, angles offset from any axis of symmetry.
    std::vector<Complex> x(static_cast<size_t>(deg));
    Real two_pi = 2 * const_pi();
    for (long i = 0; i < deg; ++i) {
        Real theta = two_pi * (Real(i) + Real(37) / 100) / deg;
        x[static_cast<size_t>(i)] = polar(bound * (Real(8) / 10), theta);
    }

    Real step_tol = pow10(-static_cast<long>(ctx.working_digits) - 10);
    for (unsigned iter = 0; iter < max_iter; ++iter) {
        Real worst = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            Complex px = eval(q, x[i]);
            if (px == Complex(0)) continue;
            Complex dpx = eval(dq, x[i]);
            Complex newton = px / dpx;
            Complex repulse(0);
            for (size_t j = 0; j < x.size(); ++j) {
                if (j == i) continue;
                repulse += Complex(1) / (x[i] - x[j]);
            }
            Complex w = newton / (Complex(1) - newton * repulse);
            x[i] -= w;
            Real rel = abs(w) / (1 + abs(x[i]));
            if (rel > worst) worst = rel;
        }
        if (worst < step_tol) return x;
    }
    throw PrecisionError("root iteration did not converge");
}

}  // namespace quintic
