#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "amo/errors.hpp"
#include "amo/mat2.hpp"

namespace amo {

// Point of the upper half-plane H = { z : Im z > 0 }.
struct HPoint {
    double re, im;

    HPoint(double r, double i) : re(r), im(i) {
        if (!(im > 0.0))
            throw std::domain_error("HPoint: Im must be strictly positive");
    }
    explicit HPoint(std::complex<double> z) : HPoint(z.real(), z.imag()) {}

    std::complex<double> to_complex() const { return {re, im}; }
};

inline double phi(const std::complex<double>& z) {
    return (1.0 + std::norm(z)) / (2.0 * z.imag());
}

// phi(z) = (1 + |z|^2) / (2 Im z); phi >= 1 with equality only at i.
inline double phi(const HPoint& z) { return (1.0 + z.re * z.re + z.im * z.im) / (2.0 * z.im); }

// Mobius action (az+b)/(cz+d) of a real unimodular matrix; maps H to H.
// Numerator and denominator are formed separately so the pole is detectable.
inline HPoint mobius_act(const Mat2& A, const HPoint& z) {
    std::complex<double> zc = z.to_complex();
    std::complex<double> num = A.a * zc + A.b;
    std::complex<double> den = A.c * zc + A.d;
    if (std::abs(den) < 1e-300)
        throw BoundaryBlowup("mobius_act: c*z+d vanished");
    std::complex<double> w = num / den;
    return HPoint(w);
}

// Extended action for complex matrices; the caller owns the interpretation
// (the result need not lie in H).
inline std::complex<double> mobius_act(const CMat2& A, const std::complex<double>& z) {
    std::complex<double> num = A.a * z + A.b;
    std::complex<double> den = A.c * z + A.d;
    if (std::abs(den) < 1e-300)
        throw BoundaryBlowup("mobius_act: c*z+d vanished");
    return num / den;
}

// Hyperbolic distance on H, normalized so dist(a*i, i) = |ln a|:
// dist(z,w) = acosh(1 + |z-w|^2 / (2 Im z Im w)).
inline double hyp_dist(const std::complex<double>& z, const std::complex<double>& w) {
    double num = std::norm(z - w);
    double arg = 1.0 + num / (2.0 * z.imag() * w.imag());
    if (arg < 1.0) arg = 1.0;  // rounding guard near z == w
    return std::acosh(arg);
}

inline double hyp_dist(const HPoint& z, const HPoint& w) {
    return hyp_dist(z.to_complex(), w.to_complex());
}

// Unique fixed point in H of a real unimodular elliptic matrix (|tr| < 2),
// i.e. the positive-imaginary root of c z^2 + (d-a) z - b = 0.
inline HPoint elliptic_fixed_point(const Mat2& A) {
    double tr = A.trace();
    if (!(std::abs(tr) < 2.0))
        throw NotElliptic("elliptic_fixed_point: |tr| >= 2");
    if (A.c == 0.0) {
        // real unimodular with c = 0 has |tr| = |a + 1/a| >= 2; only rounding
        // can land here
        throw NotElliptic("elliptic_fixed_point: degenerate c = 0");
    }
    double root = std::sqrt(4.0 - tr * tr);
    double re = (A.a - A.d) / (2.0 * A.c);
    double im = root / (2.0 * std::abs(A.c));
    return HPoint(re, im);
}

// The unique upper-triangular unimodular matrix with positive diagonal
// sending i to z: [[sqrt(y), x/sqrt(y)], [0, 1/sqrt(y)]] for z = x+iy.
// Any other unimodular matrix with the same i-image differs by a right
// rotation, under which phi and the HS norm are invariant.
inline Mat2 upper_triangular_to(const HPoint& z) {
    double s = std::sqrt(z.im);
    return {s, z.re / s, 0.0, 1.0 / s};
}

}  // namespace amo
