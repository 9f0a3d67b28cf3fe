#pragma once

#include <cmath>

namespace amo::dd {

// Double-double arithmetic (~31 significant digits), used as the
// extended-precision side of oracle cross-checks.  Knuth two-sum and
// FMA-based two-prod; no transcendentals beyond sqrt.
struct Dd {
    double hi = 0, lo = 0;
    Dd() = default;
    Dd(double h) : hi(h), lo(0) {}
    Dd(double h, double l) : hi(h), lo(l) {}
    double value() const { return hi + lo; }
};

inline Dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline Dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Dd add(const Dd& x, const Dd& y) {
    Dd s = two_sum(x.hi, y.hi);
    s.lo += x.lo + y.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline Dd sub(const Dd& x, const Dd& y) { return add(x, {-y.hi, -y.lo}); }

inline Dd mul(const Dd& x, const Dd& y) {
    Dd p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline Dd div(const Dd& x, const Dd& y) {
    double q1 = x.hi / y.hi;
    Dd r = sub(x, mul({q1}, y));
    double q2 = r.hi / y.hi;
    r = sub(r, mul({q2}, y));
    double q3 = r.hi / y.hi;
    return add(quick_two_sum(q1, q2), {q3});
}

inline Dd sqrt(const Dd& x) {
    if (x.hi <= 0) return {0};
    double s = std::sqrt(x.hi);
    Dd t = sub(x, mul({s}, {s}));
    return add({s}, div(t, {2 * s}));
}

inline Dd operator+(const Dd& a, const Dd& b) { return add(a, b); }
inline Dd operator-(const Dd& a, const Dd& b) { return sub(a, b); }
inline Dd operator*(const Dd& a, const Dd& b) { return mul(a, b); }
inline Dd operator/(const Dd& a, const Dd& b) { return div(a, b); }

// 2x2 real matrix over Dd, enough for product chains and phi identities.
struct DdMat2 {
    Dd a{1}, b{0}, c{0}, d{1};
    friend DdMat2 operator*(const DdMat2& l, const DdMat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
};

inline Dd hs_norm_sq(const DdMat2& m) {
    return m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
}

// phi(M.i) for a real unimodular Dd matrix: M.i = (a i + b)/(c i + d).
inline Dd phi_of_act_i(const DdMat2& m) {
    Dd den = m.c * m.c + m.d * m.d;
    Dd re = (m.a * m.c + m.b * m.d) / den;
    Dd im = (m.a * m.d - m.b * m.c) / den;
    return (Dd{1} + re * re + im * im) / (Dd{2} * im);
}

// phi(M.z) for z = x+iy in H.
inline Dd phi_of_act(const DdMat2& m, const Dd& x, const Dd& y) {
    Dd nre = m.a * x + m.b, nim = m.a * y;
    Dd dre = m.c * x + m.d, dim = m.c * y;
    Dd den = dre * dre + dim * dim;
    Dd re = (nre * dre + nim * dim) / den;
    Dd im = (nim * dre - nre * dim) / den;
    return (Dd{1} + re * re + im * im) / (Dd{2} * im);
}

}  // namespace amo::dd
