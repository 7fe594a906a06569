#include "quintic/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace quintic {
namespace {

Complex pw(const Complex& z, int n) { return pown(z, n); }

// -- closed-form transform coefficients ------------------------------------
// Convention: the quartic-stage functions below keep the source naming
// (r, t, s); call sites bind the principal coefficients to them positionally
// the same way the reference implementation does, which for the quartic
// stage means the linear and constant coefficients trade places.

Complex quad_A(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
           const Complex& sq5d1, const Complex& sign) {
    return (4*pw(a,4) - 13*pw(a,2)*b + 15*a*c + sign*sq5d1) / (4*pw(a,3) - 10*a*b);
}

Complex quad_B(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
           const Complex& sq5d1, const Complex& sign) {
    return (5*pw(a,2)*b - 20*pw(b,2) + 15*a*c + sign*sq5d1) / (20*pw(a,2) - 50*b);
}

Complex quad_Delta1(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex&
           e) {
    return (-3*pw(a,4)*pw(b,2) + 12*pw(a,2)*pw(b,3) + 8*pw(a,5)*c - 38*pw(a,3)*b*c + 45*pw(a,2)*pw(c,2) +
           16*pw(a,4)*d - 40*pw(a,2)*b*d);
}

Complex principal_r(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex&
           e, const Complex& A, const Complex& B) {
    return (3*a*A*b*B - 3*pw(A,2)*b*B - 3*pw(b,2)*B - 6*pw(a,2)*pw(B,2) + 6*a*A*pw(B,2) + 12*b*pw(B,2) -
           10*pw(B,3) - a*pw(A,2)*c + pw(A,3)*c + A*b*c + 6*a*B*c - 9*A*B*c - pw(c,2) - 3*a*A*d +
           4*pw(A,2)*d + 2*b*d - 6*B*d - 2*a*e + 5*A*e);
}

Complex principal_t(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex&
           e, const Complex& A, const Complex& B) {
    return (-3*a*A*b*pw(B,2) + 3*pw(A,2)*b*pw(B,2) + 3*pw(b,2)*pw(B,2) + 4*pw(a,2)*pw(B,3) - 4*a*A*pw(B,3) -
           8*b*pw(B,3) + 5*pw(B,4) + 2*a*pw(A,2)*B*c - 2*pw(A,3)*B*c - 2*A*b*B*c - 6*a*pw(B,2)*c +
           9*A*pw(B,2)*c + 2*B*pw(c,2) - a*pw(A,3)*d + pw(A,4)*d + pw(A,2)*b*d + 6*a*A*B*d - 8*pw(A,2)*B*d -
           4*b*B*d + 6*pw(B,2)*d - A*c*d + pw(d,2) - 4*a*pw(A,2)*e + 5*pw(A,3)*e + 3*A*b*e + 4*a*B*e -
           10*A*B*e - 2*c*e);
}

Complex principal_s(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex&
           e, const Complex& A, const Complex& B) {
    return (a*A*b*pw(B,3) - pw(A,2)*b*pw(B,3) - pw(b,2)*pw(B,3) - pw(a,2)*pw(B,4) + a*A*pw(B,4) +
           2*b*pw(B,4) - pw(B,5) - a*pw(A,2)*pw(B,2)*c + pw(A,3)*pw(B,2)*c + A*b*pw(B,2)*c + 2*a*pw(B,3)*c -
           3*A*pw(B,3)*c - pw(B,2)*pw(c,2) + a*pw(A,3)*B*d - pw(A,4)*B*d - pw(A,2)*b*B*d - 3*a*A*pw(B,2)*d +
           4*pw(A,2)*pw(B,2)*d + 2*b*pw(B,2)*d - 2*pw(B,3)*d + A*B*c*d - B*pw(d,2) - a*pw(A,4)*e + pw(A,5)*e
           + pw(A,3)*b*e + 4*a*pw(A,2)*B*e - 5*pw(A,3)*B*e - 3*A*b*B*e - 2*a*pw(B,2)*e + 5*A*pw(B,2)*e -
           pw(A,2)*c*e + 2*B*c*e + A*d*e - pw(e,2));
}

Complex Delta5(const Complex& r, const Complex& t, const Complex& s) {
    return (-27*pw(r,6)*pw(s,2) + 256*pw(r,2)*pw(s,5) + 108*pw(r,7)*t - 1600*pw(r,3)*pw(s,3)*t +
           2250*pw(r,4)*s*pw(t,2) + 3125*pw(r,2)*pw(t,4));
}

Complex quartic_k(const Complex& r, const Complex& t, const Complex& s, const Complex& sq5d5) {
    return (-27*pw(r,3)*s + 400*pw(s,2)*t - 375*r*pw(t,2) - 3*sq5d5) / (54*pw(r,4) - 320*pw(s,3) + 600*r*s*t);
}

Complex quartic_l(const Complex& r, const Complex& t, const Complex& s, const Complex& sq5d5) {
    return (18*pw(r,3)*pw(s,2) - 45*pw(r,4)*t - 250*r*s*pw(t,2) + 2*s*sq5d5) / (r*(27*pw(r,4) - 160*pw(s,3)
           + 300*r*s*t));
}

Complex quartic_n(const Complex& r, const Complex& t, const Complex& s, const Complex& sq5d5) {
    return (135*pw(r,4)*s - 1280*pw(s,4) + 3600*r*pw(s,2)*t - 1125*pw(r,2)*pw(t,2) - 9*r*sq5d5) /
           (10*(27*pw(r,4) - 160*pw(s,3) + 300*r*s*t));
}

Complex bj_A2(const Complex& k, const Complex& l, const Complex& m, const Complex& n, const Complex& r,
           const Complex& s, const Complex& t) {
    return (5*pw(n,4) - 2*pw(m,3)*n*r + 9*l*m*pw(n,2)*r - 12*k*pw(n,3)*r + 2*pw(l,3)*n*pw(r,2) -
           6*k*l*m*n*pw(r,2) + 6*pw(m,2)*n*pw(r,2) + 9*pw(k,2)*pw(n,2)*pw(r,2) - 9*l*pw(n,2)*pw(r,2) -
           2*pw(k,3)*n*pw(r,3) + 6*k*l*n*pw(r,3) - 6*m*n*pw(r,3) + 2*n*pw(r,4) + 5*l*pw(m,3)*s -
           10*pw(l,2)*m*n*s - 10*k*pw(m,2)*n*s + 15*k*l*pw(n,2)*s + 15*m*pw(n,2)*s - 2*pw(l,4)*r*s +
           6*k*pw(l,2)*m*r*s + 3*pw(k,2)*pw(m,2)*r*s - 9*l*pw(m,2)*r*s - 14*pw(k,2)*l*n*r*s +
           16*pw(l,2)*n*r*s + 2*k*m*n*r*s - 12*pw(n,2)*r*s + 2*pw(k,3)*l*pw(r,2)*s - 6*k*pw(l,2)*pw(r,2)*s +
           6*l*m*pw(r,2)*s + 2*k*n*pw(r,2)*s - 2*l*pw(r,3)*s + 5*pw(k,2)*pw(l,2)*pw(s,2) - 5*pw(l,3)*pw(s,2)
           - 5*pw(k,3)*m*pw(s,2) - 5*k*l*m*pw(s,2) + 5*pw(m,2)*pw(s,2) + 10*pw(k,2)*n*pw(s,2) +
           10*l*n*pw(s,2) - 2*pw(k,3)*r*pw(s,2) + 4*k*l*r*pw(s,2) - 7*m*r*pw(s,2) + 2*pw(r,2)*pw(s,2) +
           5*k*pw(s,3) + pw(m,4)*t - 8*l*pw(m,2)*n*t + 6*pw(l,2)*pw(n,2)*t + 12*k*m*pw(n,2)*t - 16*pw(n,3)*t
           - pw(l,3)*m*r*t + 3*k*l*pw(m,2)*r*t - 3*pw(m,3)*r*t + 2*k*pw(l,2)*n*r*t - 10*pw(k,2)*m*n*r*t +
           4*l*m*n*r*t + 15*k*pw(n,2)*r*t + pw(k,3)*m*pw(r,2)*t - 3*k*l*m*pw(r,2)*t + 3*pw(m,2)*pw(r,2)*t -
           2*pw(k,2)*n*pw(r,2)*t + 4*l*n*pw(r,2)*t - m*pw(r,3)*t + k*pw(l,3)*s*t - 7*pw(k,2)*l*m*s*t +
           3*pw(l,2)*m*s*t + 13*k*pw(m,2)*s*t + 6*pw(k,3)*n*s*t - 4*k*l*n*s*t - 22*m*n*s*t - 3*pw(k,4)*r*s*t
           + 11*pw(k,2)*l*r*s*t - 4*pw(l,2)*r*s*t - 10*k*m*r*s*t + 16*n*r*s*t + 3*k*pw(r,2)*s*t +
           pw(k,2)*pw(s,2)*t - 6*l*pw(s,2)*t + pw(l,4)*pw(t,2) - 4*k*pw(l,2)*m*pw(t,2) +
           2*pw(k,2)*pw(m,2)*pw(t,2) + 4*l*pw(m,2)*pw(t,2) + 8*pw(k,2)*l*n*pw(t,2) - 8*pw(l,2)*n*pw(t,2) -
           16*k*m*n*pw(t,2) + 18*pw(n,2)*pw(t,2) - pw(k,3)*l*r*pw(t,2) + 3*k*pw(l,2)*r*pw(t,2) +
           pw(k,2)*m*r*pw(t,2) - 5*l*m*r*pw(t,2) - 2*k*n*r*pw(t,2) + l*pw(r,2)*pw(t,2) + pw(k,3)*s*pw(t,2) -
           3*k*l*s*pw(t,2) + 7*m*s*pw(t,2) - 4*r*s*pw(t,2) + pw(k,4)*pw(t,3) - 4*pw(k,2)*l*pw(t,3) +
           2*pw(l,2)*pw(t,3) + 4*k*m*pw(t,3) - 8*n*pw(t,3) - k*r*pw(t,3) + pw(t,4));
}

Complex bj_B2(const Complex& k, const Complex& l, const Complex& m, const Complex& n, const Complex& r,
           const Complex& s, const Complex& t) {
    return (-pw(n,5) + pw(m,3)*pw(n,2)*r - 3*l*m*pw(n,3)*r + 3*k*pw(n,4)*r - pw(l,3)*pw(n,2)*pw(r,2) +
           3*k*l*m*pw(n,2)*pw(r,2) - 3*pw(m,2)*pw(n,2)*pw(r,2) - 3*pw(k,2)*pw(n,3)*pw(r,2) +
           3*l*pw(n,3)*pw(r,2) + pw(k,3)*pw(n,2)*pw(r,3) - 3*k*l*pw(n,2)*pw(r,3) + 3*m*pw(n,2)*pw(r,3) -
           pw(n,2)*pw(r,4) + pw(m,5)*s - 5*l*pw(m,3)*n*s + 5*pw(l,2)*m*pw(n,2)*s + 5*k*pw(m,2)*pw(n,2)*s -
           5*k*l*pw(n,3)*s - 5*m*pw(n,3)*s - pw(l,3)*pw(m,2)*r*s + 3*k*l*pw(m,3)*r*s - 3*pw(m,4)*r*s +
           2*pw(l,4)*n*r*s - 6*k*pw(l,2)*m*n*r*s - 3*pw(k,2)*pw(m,2)*n*r*s + 9*l*pw(m,2)*n*r*s +
           7*pw(k,2)*l*pw(n,2)*r*s - 8*pw(l,2)*pw(n,2)*r*s - k*m*pw(n,2)*r*s + 4*pw(n,3)*r*s +
           pw(k,3)*pw(m,2)*pw(r,2)*s - 3*k*l*pw(m,2)*pw(r,2)*s + 3*pw(m,3)*pw(r,2)*s -
           2*pw(k,3)*l*n*pw(r,2)*s + 6*k*pw(l,2)*n*pw(r,2)*s - 6*l*m*n*pw(r,2)*s - k*pw(n,2)*pw(r,2)*s -
           pw(m,2)*pw(r,3)*s + 2*l*n*pw(r,3)*s - pw(l,5)*pw(s,2) + 5*k*pw(l,3)*m*pw(s,2) -
           5*pw(k,2)*l*pw(m,2)*pw(s,2) - 5*pw(l,2)*pw(m,2)*pw(s,2) + 5*k*pw(m,3)*pw(s,2) -
           5*pw(k,2)*pw(l,2)*n*pw(s,2) + 5*pw(l,3)*n*pw(s,2) + 5*pw(k,3)*m*n*pw(s,2) + 5*k*l*m*n*pw(s,2) -
           5*pw(m,2)*n*pw(s,2) - 5*pw(k,2)*pw(n,2)*pw(s,2) - 5*l*pw(n,2)*pw(s,2) + pw(k,3)*pw(l,2)*r*pw(s,2)
           - 3*k*pw(l,3)*r*pw(s,2) - 2*pw(k,4)*m*r*pw(s,2) + 6*pw(k,2)*l*m*r*pw(s,2) + 3*pw(l,2)*m*r*pw(s,2)
           - 7*k*pw(m,2)*r*pw(s,2) + 2*pw(k,3)*n*r*pw(s,2) - 4*k*l*n*r*pw(s,2) + 7*m*n*r*pw(s,2) -
           pw(l,2)*pw(r,2)*pw(s,2) + 2*k*m*pw(r,2)*pw(s,2) - 2*n*pw(r,2)*pw(s,2) + pw(k,5)*pw(s,3) -
           5*pw(k,3)*l*pw(s,3) + 5*k*pw(l,2)*pw(s,3) + 5*pw(k,2)*m*pw(s,3) - 5*l*m*pw(s,3) - 5*k*n*pw(s,3) -
           pw(k,2)*r*pw(s,3) + 2*l*r*pw(s,3) - pw(s,4) - pw(m,4)*n*t + 4*l*pw(m,2)*pw(n,2)*t -
           2*pw(l,2)*pw(n,3)*t - 4*k*m*pw(n,3)*t + 4*pw(n,4)*t + pw(l,3)*m*n*r*t - 3*k*l*pw(m,2)*n*r*t +
           3*pw(m,3)*n*r*t - k*pw(l,2)*pw(n,2)*r*t + 5*pw(k,2)*m*pw(n,2)*r*t - 2*l*m*pw(n,2)*r*t -
           5*k*pw(n,3)*r*t - pw(k,3)*m*n*pw(r,2)*t + 3*k*l*m*n*pw(r,2)*t - 3*pw(m,2)*n*pw(r,2)*t +
           pw(k,2)*pw(n,2)*pw(r,2)*t - 2*l*pw(n,2)*pw(r,2)*t + m*n*pw(r,3)*t + pw(l,4)*m*s*t -
           4*k*pw(l,2)*pw(m,2)*s*t + 2*pw(k,2)*pw(m,3)*s*t + 4*l*pw(m,3)*s*t - k*pw(l,3)*n*s*t +
           7*pw(k,2)*l*m*n*s*t - 3*pw(l,2)*m*n*s*t - 13*k*pw(m,2)*n*s*t - 3*pw(k,3)*pw(n,2)*s*t +
           2*k*l*pw(n,2)*s*t + 11*m*pw(n,2)*s*t - pw(k,3)*l*m*r*s*t + 3*k*pw(l,2)*m*r*s*t +
           pw(k,2)*pw(m,2)*r*s*t - 5*l*pw(m,2)*r*s*t + 3*pw(k,4)*n*r*s*t - 11*pw(k,2)*l*n*r*s*t +
           4*pw(l,2)*n*r*s*t + 10*k*m*n*r*s*t - 8*pw(n,2)*r*s*t + l*m*pw(r,2)*s*t - 3*k*n*pw(r,2)*s*t -
           pw(k,4)*l*pw(s,2)*t + 4*pw(k,2)*pw(l,2)*pw(s,2)*t - 2*pw(l,3)*pw(s,2)*t + pw(k,3)*m*pw(s,2)*t -
           7*k*l*m*pw(s,2)*t + 3*pw(m,2)*pw(s,2)*t - pw(k,2)*n*pw(s,2)*t + 6*l*n*pw(s,2)*t + k*l*r*pw(s,2)*t
           - 3*m*r*pw(s,2)*t + k*pw(s,3)*t - pw(l,4)*n*pw(t,2) + 4*k*pw(l,2)*m*n*pw(t,2) -
           2*pw(k,2)*pw(m,2)*n*pw(t,2) - 4*l*pw(m,2)*n*pw(t,2) - 4*pw(k,2)*l*pw(n,2)*pw(t,2) +
           4*pw(l,2)*pw(n,2)*pw(t,2) + 8*k*m*pw(n,2)*pw(t,2) - 6*pw(n,3)*pw(t,2) + pw(k,3)*l*n*r*pw(t,2) -
           3*k*pw(l,2)*n*r*pw(t,2) - pw(k,2)*m*n*r*pw(t,2) + 5*l*m*n*r*pw(t,2) + k*pw(n,2)*r*pw(t,2) -
           l*n*pw(r,2)*pw(t,2) + pw(k,4)*m*s*pw(t,2) - 4*pw(k,2)*l*m*s*pw(t,2) + 2*pw(l,2)*m*s*pw(t,2) +
           4*k*pw(m,2)*s*pw(t,2) - pw(k,3)*n*s*pw(t,2) + 3*k*l*n*s*pw(t,2) - 7*m*n*s*pw(t,2) -
           k*m*r*s*pw(t,2) + 4*n*r*s*pw(t,2) - l*pw(s,2)*pw(t,2) - pw(k,4)*n*pw(t,3) + 4*pw(k,2)*l*n*pw(t,3)
           - 2*pw(l,2)*n*pw(t,3) - 4*k*m*n*pw(t,3) + 4*pw(n,2)*pw(t,3) + k*n*r*pw(t,3) + m*s*pw(t,3) -
           n*pw(t,4));
}

std::array<Complex, 4> m_cubic_coeffs(const Complex& r, const Complex& t, const Complex& s, const Complex&
           sq5d5) {
    const Complex M1 = 162*pw(r,7) - 1104*pw(r,3)*pw(s,3) + 2295*pw(r,4)*s*t + 1875*pw(r,2)*pw(t,3);
    const Complex N1 = 16*pw(s,2) - 15*r*t;
    const Complex S1 = 54*pw(r,5) - 320*r*pw(s,3) + 600*pw(r,2)*s*t;
    const Complex M2 = (4374*pw(r,12) - 59859*pw(r,8)*pw(s,3) + 205440*pw(r,4)*pw(s,6) + 124902*pw(r,9)*s*t
           - 869760*pw(r,5)*pw(s,4)*t + 102400*r*pw(s,7)*t + 946350*pw(r,6)*pw(s,2)*pw(t,2) -
           688000*pw(r,2)*pw(s,5)*pw(t,2) + 81000*pw(r,7)*pw(t,3) + 510000*pw(r,3)*pw(s,3)*pw(t,3) +
           1040625*pw(r,4)*s*pw(t,4) + 1250000*r*pw(s,2)*pw(t,5));
    const Complex N2 = (-783*pw(r,5)*pw(s,2) + 5120*r*pw(s,5) + 486*pw(r,6)*t - 12960*pw(r,2)*pw(s,3)*t +
           4725*pw(r,3)*s*pw(t,2) - 10000*pw(s,2)*pw(t,3));
    const Complex S2 = 2*r*pw(27*pw(r,4) - 160*pw(s,3) + 300*r*s*t, 2);
    const Complex M3 = (-196830*pw(r,17) + 4056885*pw(r,13)*pw(s,3) - 27812160*pw(r,9)*pw(s,6) +
           61649920*pw(r,5)*pw(s,9) + 13107200*r*pw(s,12) - 8496495*pw(r,14)*s*t +
           117564615*pw(r,10)*pw(s,4)*t - 400708800*pw(r,6)*pw(s,7)*t - 73728000*pw(r,2)*pw(s,10)*t -
           126918900*pw(r,11)*pw(s,2)*pw(t,2) + 909441000*pw(r,7)*pw(s,5)*pw(t,2) -
           35200000*pw(r,3)*pw(s,8)*pw(t,2) - 4829625*pw(r,12)*pw(t,3) - 651358125*pw(r,8)*pw(s,3)*pw(t,3) +
           426800000*pw(r,4)*pw(s,6)*pw(t,3) - 133650000*pw(r,9)*s*pw(t,4) +
           130500000*pw(r,5)*pw(s,4)*pw(t,4) + 160000000*r*pw(s,7)*pw(t,4) -
           1065234375*pw(r,6)*pw(s,2)*pw(t,5) + 125000000*pw(r,2)*pw(s,5)*pw(t,5) - 10546875*pw(r,7)*pw(t,6)
           - 828125000*pw(r,3)*pw(s,3)*pw(t,6) - 263671875*pw(r,4)*s*pw(t,7));
    const Complex N3 = (50301*pw(r,10)*pw(s,2) - 675648*pw(r,6)*pw(s,5) + 2298880*pw(r,2)*pw(s,8) -
           22599*pw(r,11)*t + 1658475*pw(r,7)*pw(s,3)*t - 10376000*pw(r,3)*pw(s,6)*t -
           516375*pw(r,8)*s*pw(t,2) + 13329000*pw(r,4)*pw(s,4)*pw(t,2) - 640000*pw(s,7)*pw(t,2) -
           2362500*pw(r,5)*pw(s,2)*pw(t,3) - 4600000*r*pw(s,5)*pw(t,3) - 84375*pw(r,6)*pw(t,4) +
           13375000*pw(r,2)*pw(s,3)*pw(t,4) - 2109375*pw(r,3)*s*pw(t,5));
    const Complex S3 = 10*r*pw(27*pw(r,4) - 160*pw(s,3) + 300*r*s*t, 3);
    return {r,
            (M1 + N1*sq5d5)/S1,
            (M2 + N2*sq5d5)/S2,
            (M3 + N3*sq5d5)/S3};
}


// -- polynomial plumbing -----------------------------------------------------

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() + b.size() - 1, Complex(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Power sums p_k = sum over roots of x^k for a monic polynomial, k = 0..kmax,
// by Newton's recurrences (no root extraction).
std::vector<Complex> power_sums(const Poly& mp, int kmax) {
    const int n = mp.degree();
    std::vector<Complex> p(static_cast<std::size_t>(kmax) + 1, Complex(0));
    p[0] = Complex(n);
    for (int k = 1; k <= kmax; ++k) {
        Complex acc(0);
        if (k <= n) {
            acc = Complex(-k) * mp.c[static_cast<std::size_t>(n - k)];
            for (int i = 1; i < k; ++i) acc -= mp.c[static_cast<std::size_t>(n - i)] * p[static_cast<std::size_t>(k - i)];
        } else {
            for (int i = 1; i <= n; ++i) acc -= mp.c[static_cast<std::size_t>(n - i)] * p[static_cast<std::size_t>(k - i)];
        }
        p[static_cast<std::size_t>(k)] = acc;
    }
    return p;
}

// Coefficients (ascending, monic) of prod_i (y - T(x_i)) over the roots x_i
// of the monic polynomial mp, computed with power sums only.
std::vector<Complex> transform_image(const Poly& mp, const std::vector<Complex>& T) {
    const int n = mp.degree();
    const int d = static_cast<int>(T.size()) - 1;
    const auto px = power_sums(mp, n * d);
    std::vector<Complex> s(static_cast<std::size_t>(n) + 1, Complex(0));  // s[j] = sum T(x_i)^j
    std::vector<Complex> tp{Complex(1)};
    for (int j = 1; j <= n; ++j) {
        tp = poly_mul(tp, T);
        Complex acc(0);
        for (std::size_t i = 0; i < tp.size(); ++i) acc += tp[i] * px[i];
        s[static_cast<std::size_t>(j)] = acc;
    }
    std::vector<Complex> e(static_cast<std::size_t>(n) + 1, Complex(0));
    e[0] = Complex(1);
    for (int j = 1; j <= n; ++j) {
        Complex acc(0);
        for (int i = 1; i <= j; ++i) {
            const Complex term = e[static_cast<std::size_t>(j - i)] * s[static_cast<std::size_t>(i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        e[static_cast<std::size_t>(j)] = acc / Complex(j);
    }
    std::vector<Complex> img(static_cast<std::size_t>(n) + 1, Complex(0));
    img[static_cast<std::size_t>(n)] = Complex(1);
    for (int j = 1; j <= n; ++j) {
        img[static_cast<std::size_t>(n - j)] = (j % 2 == 1) ? -e[static_cast<std::size_t>(j)] : e[static_cast<std::size_t>(j)];
    }
    return img;
}

// p(x + delta), ascending coefficients.
Poly shift_poly(const Poly& p, const Complex& delta) {
    Poly out = p;
    const int n = out.degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) out.c[static_cast<std::size_t>(j)] += delta * out.c[static_cast<std::size_t>(j) + 1];
    return out;
}

// Roots of x^2 + b x + c, cancellation-safe pairing.
std::pair<Complex, Complex> solve_quadratic(const Complex& b, const Complex& c) {
    Complex sq = sqrt(b * b - 4 * c);
    if (b.re * sq.re + b.im * sq.im < 0) sq = -sq;
    const Complex r1 = (-b - sq) / 2;
    if (abs(r1) == 0) return {Complex(0), -b};
    return {r1, c / r1};
}

Poly lift_poly(const Poly& p) {
    Poly out = p;
    for (auto& z : out.c) z = lift(z);
    return out;
}

Complex newton_local(const Poly& p, const Poly& dp, Complex x, const Real& step_eps, int max_iter) {
    for (int i = 0; i < max_iter; ++i) {
        const Complex d = eval(dp, x);
        if (abs(d) == 0) break;
        const Complex corr = eval(p, x) / d;
        x = x - corr;
        if (abs(corr) < step_eps * (1 + abs(x))) break;
    }
    return x;
}

}  // namespace

Complex quartic_stage_discriminant(const PrincipalQuintic& p) {
    return Delta5(p.c2, p.c0, p.c1);
}

std::vector<Complex> solve_cubic(const Complex& a_in, const Complex& b_in, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + 20);
    const Complex a = lift(a_in), b = lift(b_in);
    // Resolvent X^2 - b X + a^3: roots A, B with A B = a^3; x = cbrt(A) + a/cbrt(A).
    auto [A, B] = solve_quadratic(-b, pw(a, 3));
    if (abs(B) > abs(A)) std::swap(A, B);
    std::vector<Complex> roots;
    if (abs(A) == 0) return {Complex(0), Complex(0), Complex(0)};
    for (const Complex& c : all_cbrt(A)) roots.push_back(c + a / c);
    return roots;
}

std::vector<Complex> solve_quartic(const Poly& p, const NumericContext& ctx) {
    if (p.degree() != 4) throw DomainError("solve_quartic needs degree 4");
    ScopedDigits guard(ctx.working_digits + 20);
    const Poly mp = lift_poly(monic(p));
    const Complex p3 = mp.c[3], p2 = mp.c[2], p1 = mp.c[1], p0 = mp.c[0];
    // depress: x = y - p3/4
    const Complex al = p2 - 3 * pw(p3, 2) / 8;
    const Complex be = p1 - p3 * p2 / 2 + pw(p3, 3) / 8;
    const Complex ga = p0 - p3 * p1 / 4 + pw(p3, 2) * p2 / 16 - 3 * pw(p3, 4) / 256;
    const Complex shift_back = -p3 / 4;
    const Real scale = (std::max)({Real(1), abs(al), abs(ga)});
    std::vector<Complex> ys;
    if (abs(be) <= ctx.tol * ctx.tol * scale) {
        auto [z1, z2] = solve_quadratic(al, ga);
        const Complex s1 = sqrt(z1), s2 = sqrt(z2);
        ys = {s1, -s1, s2, -s2};
    } else {
        // Ferrari: find t with (y^2 + al/2 + t)^2 - (w y - be/(2w))^2 matching,
        // w = sqrt(2t); t solves 8t^3 + 8 al t^2 + (2 al^2 - 8 ga) t - be^2 = 0.
        const Complex cc2 = al, cc1 = (pw(al, 2) - 4 * ga) / 4, cc0 = -pw(be, 2) / 8;
        const Complex P = cc1 - pw(cc2, 2) / 3;
        const Complex Q = 2 * pw(cc2, 3) / 27 - cc1 * cc2 / 3 + cc0;
        Complex t_best(0);
        for (const Complex& z : solve_cubic(-P / 3, -Q, ctx)) {
            const Complex t = z - cc2 / 3;
            if (abs(t) > abs(t_best)) t_best = t;
        }
        const Complex w = sqrt(2 * t_best);
        const Complex off = be / (2 * w);
        auto [ra, rb] = solve_quadratic(w, al / 2 + t_best - off);
        auto [rc, rd] = solve_quadratic(-w, al / 2 + t_best + off);
        ys = {ra, rb, rc, rd};
    }
    for (auto& y : ys) y = y + shift_back;
    return ys;
}

PrincipalQuintic to_principal(const Poly& p, TransformChain& chain, const NumericContext& ctx) {
    if (p.degree() != 5) throw DomainError("to_principal needs degree 5");
    ScopedDigits guard(ctx.working_digits + 20);
    const Poly mp = lift_poly(monic(p));
    Real cscale(1);
    for (const auto& z : mp.c) cscale = (std::max)(cscale, abs(z));
    const Real near_zero = lift(ctx.tol) * cscale;
    const Real den_floor = sqrt(lift(ctx.tol));

    static const double kShifts[] = {0.0, 0.25, -1.0 / 3.0, 0.5, -2.0 / 3.0, 1.0};
    for (double dshift : kShifts) {
        const Complex delta(dshift);
        const Poly q = (dshift == 0.0) ? mp : shift_poly(mp, delta);
        const Complex a = q.c[4], b = q.c[3], c = q.c[2], d = q.c[1], e = q.c[0];
        if (abs(a) <= near_zero && abs(b) <= near_zero) {
            if (dshift != 0.0) chain.shift = delta;
            return {c, d, e};
        }
        const Complex den1 = 4 * pw(a, 3) - 10 * a * b;
        const Complex den2 = 20 * pw(a, 2) - 50 * b;
        const Real dscale = (std::max)({Real(1), abs(pw(a, 3)), abs(a * b), abs(b)});
        if (abs(den1) < den_floor * dscale || abs(den2) < den_floor * dscale) continue;
        const Complex sq1 = sqrt(5 * quad_Delta1(a, b, c, d, e));
        for (int sgn : {+1, -1}) {
            const Complex A = quad_A(a, b, c, d, e, sq1, Complex(sgn));
            const Complex B = quad_B(a, b, c, d, e, sq1, Complex(sgn));
            const Complex c2 = principal_r(a, b, c, d, e, A, B);
            const Complex c1 = principal_t(a, b, c, d, e, A, B);
            const Complex c0 = principal_s(a, b, c, d, e, A, B);
            const auto img = transform_image(q, {B, A, Complex(1)});
            const Real S = (std::max)({Real(1), abs(c2), abs(c1), abs(c0)});
            if ((std::max)(abs(img[4]), abs(img[3])) > den_floor * S) continue;
            if (dshift != 0.0) chain.shift = delta;
            chain.quad = std::make_pair(A, B);
            return {c2, c1, c0};
        }
    }
    throw DegenerateInputError("quadratic Tschirnhausen stage is degenerate for this input");
}

BringJerrard to_bring_jerrard(const PrincipalQuintic& pq, TransformChain& chain, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + 20);
    const Complex r_ = lift(pq.c2), t_ = lift(pq.c1), s_ = lift(pq.c0);
    const Real cscale = (std::max)({Real(1), abs(r_), abs(t_), abs(s_)});
    if (abs(r_) <= lift(ctx.tol) * cscale) return {t_, s_};  // already Bring-Jerrard

    const Real den_floor = sqrt(lift(ctx.tol));
    // Shared denominator core; its printed form sees the linear/constant swap.
    const Complex dcore = 27 * pw(r_, 4) - 160 * pw(s_, 3) + 300 * r_ * s_ * t_;
    const Complex S1fix = 54 * pw(r_, 5) - 320 * r_ * pw(t_, 3) + 600 * pw(r_, 2) * t_ * s_;
    if (abs(dcore) < den_floor * cscale || abs(S1fix) < den_floor * cscale)
        throw DegenerateInputError("quartic Tschirnhausen stage is degenerate for this input");

    const Complex sq0 = sqrt(5 * Delta5(r_, s_, t_));
    Real best_resid(-1);
    for (int flip : {+1, -1}) {
        const Complex sq = Complex(flip) * sq0;
        const Complex k = quartic_k(r_, s_, t_, sq);
        const Complex l = quartic_l(r_, s_, t_, sq);
        const Complex n = quartic_n(r_, s_, t_, sq);
        auto cc = m_cubic_coeffs(r_, s_, t_, sq);
        // The printed quadratic-term numerator carries the wrong sign; the
        // working coefficient is (-M1 + N1 sq)/S1.
        const Complex M1fix = 162 * pw(r_, 7) - 1104 * pw(r_, 3) * pw(t_, 3) + 2295 * pw(r_, 4) * t_ * s_ +
                              1875 * pw(r_, 2) * pw(s_, 3);
        cc[1] = cc[1] - 2 * M1fix / S1fix;
        // cc[0] m^3 + cc[1] m^2 + cc[2] m + cc[3] = 0, cc[0] = c2 != 0
        const Complex q2 = cc[1] / cc[0], q1 = cc[2] / cc[0], q0 = cc[3] / cc[0];
        const Complex P = q1 - pw(q2, 2) / 3;
        const Complex Q = 2 * pw(q2, 3) / 27 - q1 * q2 / 3 + q0;
        auto mz = solve_cubic(-P / 3, -Q, ctx);
        std::sort(mz.begin(), mz.end(), [](const Complex& x, const Complex& y) {
            if (x.re != y.re) return x.re < y.re;
            return x.im < y.im;
        });
        for (const Complex& z : mz) {
            const Complex m = z - q2 / 3;
            const auto img = transform_image(Poly{{s_, t_, r_, Complex(0), Complex(0), Complex(1)}},
                                             {n, m, l, k, Complex(1)});
            const Complex A2 = bj_A2(k, l, m, n, r_, s_, t_);
            const Complex B2 = bj_B2(k, l, m, n, r_, s_, t_);
            const Real S = (std::max)({Real(1), abs(A2), abs(B2)});
            const Real resid = (std::max)({abs(img[2]), abs(img[3]), abs(img[4])});
            if (best_resid < 0 || resid < best_resid) best_resid = resid;
            if (resid <= den_floor * S) {
                chain.quartic = std::array<Complex, 4>{k, l, m, n};
                return {A2, B2};
            }
        }
    }
    throw ReductionError("no quartic-stage branch eliminated the coefficients (best residual " +
                         to_decimal(best_resid, 3) + ")");
}

BringForm to_bring(const BringJerrard& bj, TransformChain& chain, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + 20);
    const Complex A2 = lift(bj.A2), B2 = lift(bj.B2);
    if (abs(A2) == 0)
        throw DegenerateInputError("Bring-Jerrard linear coefficient is zero; roots are the fifth roots of -B2");
    const Complex lam = sqrt(sqrt(A2));  // principal fourth root
    const Complex t = B2 / pw(lam, 5);
    chain.scale = lam;
    return {t};
}

std::vector<Complex> back_map(const std::vector<Complex>& reduced_roots, const TransformChain& chain,
                              const Poly& original, const NumericContext& ctx) {
    if (!chain.scale && !chain.quartic && !chain.quad && !chain.shift) return reduced_roots;
    ScopedDigits guard(ctx.working_digits + 20);
    const Poly P = lift_poly(monic(original));
    const Poly dP = derivative(P);
    const Real tol = lift(ctx.tol);
    const Real keep = sqrt(tol);
    const Real step_eps = pow10(-(static_cast<long>(ctx.working_digits) + 10));

    std::vector<Complex> cand;
    for (const auto& y : reduced_roots) cand.push_back(lift(y));
    if (chain.scale)
        for (auto& y : cand) y = *chain.scale * y;
    if (chain.quartic) {
        const auto& q = *chain.quartic;
        std::vector<Complex> next;
        for (const auto& y : cand) {
            Poly quart{{q[3] - y, q[2], q[1], q[0], Complex(1)}};
            for (const auto& x : solve_quartic(quart, ctx)) next.push_back(x);
        }
        cand = std::move(next);
    }
    if (chain.quad) {
        const auto& [A, B] = *chain.quad;
        std::vector<Complex> next;
        for (const auto& v : cand) {
            auto [x1, x2] = solve_quadratic(A, B - v);
            next.push_back(x1);
            next.push_back(x2);
        }
        cand = std::move(next);
    }
    if (chain.shift)
        for (auto& x : cand) x = x + *chain.shift;

    // polish against the original, filter, then pick five by greedy deflation
    std::vector<Complex> pool;
    for (auto& x : cand) {
        const Complex px = newton_local(P, dP, x, step_eps, 80);
        if (scaled_residual(P, px) < keep) pool.push_back(px);
    }
    if (pool.size() < 5)
        throw ReductionError("back-mapping kept " + std::to_string(pool.size()) + " candidates, need 5");

    std::vector<Complex> out;
    Poly work = P;
    for (int pick = 0; pick < 5; ++pick) {
        std::size_t best = 0;
        Real best_resid(-1);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const Real res = scaled_residual(work, pool[i]);
            if (best_resid < 0 || res < best_resid) {
                best_resid = res;
                best = i;
            }
        }
        Complex x = pool[best];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        if (pick < 4) work = deflate(work, x);
        out.push_back(x);
    }
    for (auto& x : out) x = newton_local(P, dP, x, step_eps, 80);
    return out;
}

}  // namespace quintic
