#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "amo/halfplane.hpp"
#include "amo/mat2.hpp"
#include "amo/periodic.hpp"

namespace amo {

// Finitely supported trigonometric polynomial sum_k c_k e^{2 pi i k x}.
struct TrigPoly {
    std::map<long long, std::complex<double>> coeffs;
    long long essential_lo = 0, essential_hi = 0;  // interval containing the support

    std::complex<double> eval(double x) const;
    void set_essential_from_support();
};

// Restriction of the coefficients to the integer interval [lo, hi].
TrigPoly truncate(const TrigPoly& series, long long lo, long long hi);

// ||p||_0 / sup_{0<=j<=k} |p(x0 + j alpha)| with the sup norm taken on a
// dense grid of 16k points: the empirical constant of the orbit-sampling
// bound for polynomials of essential degree k.
double orbit_sampling_ratio(const TrigPoly& p, double alpha, double x0, long long k);

// Exact rotation-average identity for elliptic products: for r/s in lowest
// terms not a multiple of 1/2,
//   (1/s) sum_{k<s} phi(B0 . R_{rk/s} . z0) = phi(z0) phi(B0 . i).
struct CancellationPair {
    double lhs, rhs;
};

CancellationPair cancellation_identity(const Mat2& B0, const HPoint& z0, long long r,
                                       long long s);

// Irrational-rotation average against the same bound; ratio -> 1 as b0 grows
// when rho is not too close to 0 or 1/2.
struct EllipticAverage {
    double avg, bound;
};

EllipticAverage elliptic_average_experiment(const Mat2& B0, double rho, const HPoint& z0,
                                            long long b0, double delta = 1e-3);

// Synthetic exponential-regime instance: true frequency alpha = p/q + dev
// with an explicitly known deviation.  E must lie in the interior of the
// x_set of the p/q model at theta.
struct RegimeInstance {
    double lambda;
    long long p, q;
    double dev;  // alpha_true - p/q
    double theta;

    double alpha_true() const { return static_cast<double>(p) / static_cast<double>(q) + dev; }
};

// Deviations || B(theta)^{-1} Atilde_{kq}(theta) B(theta) - R_{+-k rho} ||_HS
// for k < b, where B maps i to the elliptic fixed point m(theta,E) of the
// periodic model and Atilde uses the true frequency.  The +- sign is fixed
// once, at k = 1, by the smaller deviation.
struct ShadowReport {
    long long q = 0;
    long long b = 0;
    double rho = 0;          // band label of E
    int sign = +1;           // resolved rotation sign
    std::vector<double> deviations;
    double max_dev = 0;

    std::string to_json() const;
};

ShadowReport build_shadowing(const RegimeInstance& inst, double E, long long b);

// Orbit-averaged phi against the elliptic floor ((1+kappa^2)/(2 kappa)) phi(m)
// with kappa in [1,2] read off from |ln phi(z) - ln phi(m)|.
struct DynamicalCancellation {
    double avg = 0;
    double floor = 0;
    double kappa = 1;
    double phi_m = 0;

    std::string to_json() const;
};

DynamicalCancellation dynamical_cancellation(const RegimeInstance& inst, double E,
                                             const HPoint& z, long long b);

// Integrated version: spectral mass (1/2 pi) int phi(m~(theta + k alpha, E)) dE
// per orbit phase k < b, with m~ the eps-smoothed Borel-transform proxy and the
// energy set sampled over x_set intersected with a finer-approximant spectrum.
struct IntegratedReport {
    long long b = 0;
    double eps = 0;
    std::vector<double> mass_per_k;
    double mass_k0 = 0;
    double mass_avg = 0;

    std::string to_json() const;
};

IntegratedReport integrated_cancellation(const RegimeInstance& inst, long long b,
                                         int samples_per_band, double eps,
                                         long long p_fine, long long q_fine);

}  // namespace amo
