#pragma once

#include <cmath>
#include <complex>

namespace amo {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Determinant drift policy: long products (n ~ 1e7) accumulate rounding, so
// every product renormalizes by 1/sqrt(det) once |det-1| > 1e-12.
inline constexpr double kDetDriftTol = 1e-12;

// Real 2x2 matrix, unimodular by convention (det kept within 1e-9 of 1).
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    static Mat2 diag(double x, double y) { return {x, 0, 0, y}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 inverse() const { return {d, -b, -c, a}; }  // unimodular inverse

    Mat2& renorm_det() {
        double dt = det();
        if (std::abs(dt - 1.0) > kDetDriftTol && dt > 0.0) {
            double s = 1.0 / std::sqrt(dt);
            a *= s; b *= s; c *= s; d *= s;
        }
        return *this;
    }

    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        Mat2 m{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
               l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
        m.renorm_det();
        return m;
    }

    friend Mat2 operator*(double s, const Mat2& m) {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }
};

// Product without the unimodular renormalization, for scale-managed chains
// whose matrix part deliberately has det != 1.
inline Mat2 mul_nodet(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

// Rotation by angle 2*pi*theta.
inline Mat2 rotation(double theta) {
    double c = std::cos(kTwoPi * theta), s = std::sin(kTwoPi * theta);
    return {c, -s, s, c};
}

inline double hs_norm_sq(const Mat2& m) {
    return m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
}

inline double hs_norm(const Mat2& m) { return std::sqrt(hs_norm_sq(m)); }

// Operator 2-norm from the exact singular values of a 2x2 matrix:
// sigma_+^2 = (|A|_HS^2 + sqrt(|A|_HS^4 - 4 det^2)) / 2.
inline double op_norm(const Mat2& m) {
    double h = hs_norm_sq(m);
    double dt = m.det();
    double disc = h * h - 4.0 * dt * dt;
    if (disc < 0) disc = 0;
    return std::sqrt(0.5 * (h + std::sqrt(disc)));
}

// Smaller singular value (sigma_- = |det| / sigma_+ for 2x2).
inline double op_norm_min(const Mat2& m) {
    double s = op_norm(m);
    return s > 0 ? std::abs(m.det()) / s : 0.0;
}

// Complex 2x2, used at complex energy.
struct CMat2 {
    std::complex<double> a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

    static CMat2 identity() { return {}; }

    std::complex<double> det() const { return a * d - b * c; }

    CMat2& renorm_det() {
        std::complex<double> dt = det();
        if (std::abs(dt - 1.0) > kDetDriftTol && std::abs(dt) > 0.0) {
            std::complex<double> s = 1.0 / std::sqrt(dt);
            a *= s; b *= s; c *= s; d *= s;
        }
        return *this;
    }

    friend CMat2 operator*(const CMat2& l, const CMat2& r) {
        CMat2 m{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
        m.renorm_det();
        return m;
    }
};

inline double hs_norm_sq(const CMat2& m) {
    return std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
}

inline double op_norm(const CMat2& m) {
    double h = hs_norm_sq(m);
    double dt = std::abs(m.det());
    double disc = h * h - 4.0 * dt * dt;
    if (disc < 0) disc = 0;
    return std::sqrt(0.5 * (h + std::sqrt(disc)));
}

// Matrix with a separate log scale, so that products of length ~1e7 never
// overflow.  Conceptual value is exp(log_scale) * m; for unimodular chains
// det(m) = exp(-2 log_scale), so the matrix part must never be re-normalized
// to det 1.
struct ScaledMat2 {
    Mat2 m;
    double log_scale = 0;

    void apply_left(const Mat2& step) { m = mul_nodet(step, m); }

    // Factor the operator norm into log_scale.  No det correction here: once
    // the value's singular gap passes 1/sqrt(machine eps), the computed
    // ad - bc of the normalized part is cancellation noise, and no norm-based
    // consumer (Lyapunov, sup norms, gap tests) reads it.
    void rescale() {
        double s = op_norm(m);
        if (!(s > 0)) return;
        log_scale += std::log(s);
        double inv = 1.0 / s;
        m.a *= inv; m.b *= inv; m.c *= inv; m.d *= inv;
    }

    double log_op_norm() const { return log_scale + std::log(op_norm(m)); }
    double log_hs_norm() const { return log_scale + 0.5 * std::log(hs_norm_sq(m)); }
};

inline CMat2 mul_nodet(const CMat2& l, const CMat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

struct ScaledCMat2 {
    CMat2 m;
    double log_scale = 0;

    void apply_left(const CMat2& step) { m = mul_nodet(step, m); }

    void rescale() {
        double s = op_norm(m);
        if (!(s > 0)) return;
        log_scale += std::log(s);
        double inv = 1.0 / s;
        m.a *= inv; m.b *= inv; m.c *= inv; m.d *= inv;
    }

    double log_op_norm() const { return log_scale + std::log(op_norm(m)); }
};

}  // namespace amo
