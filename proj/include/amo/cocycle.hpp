#pragma once

#include <complex>
#include <string>
#include <vector>

#include "amo/mat2.hpp"

namespace amo {

// Schrodinger cocycle (alpha, S_{lambda,E}) over x -> x + alpha with one-step
// matrix S(x) = [[E - 2 lambda cos(2 pi x), -1], [1, 0]].
struct SchrodingerCocycle {
    double lambda;
    double alpha;
    std::complex<double> E;

    SchrodingerCocycle(double lam, double alph, std::complex<double> energy)
        : lambda(lam), alpha(alph), E(energy) {
        if (lambda == 0.0) throw std::domain_error("SchrodingerCocycle: lambda != 0");
        if (E.imag() < 0.0) throw std::domain_error("SchrodingerCocycle: Im E >= 0");
    }

    bool real_energy() const { return E.imag() == 0.0; }
};

// Phase grids are offset to avoid lattice resonance with rational test
// frequencies.
inline constexpr double kPhaseOffset = 0.123;

// One-step matrix at phase x (real-energy cocycle).
Mat2 step_matrix(const SchrodingerCocycle& c, double x);
CMat2 step_matrix_complex(const SchrodingerCocycle& c, double x);

// n-step transfer matrix A_n(x) = A(x+(n-1)alpha) ... A(x), in log-scale form
// (rescaled every 32 steps so entries never overflow).
ScaledMat2 iterate(const SchrodingerCocycle& c, double x, long long n);
ScaledCMat2 iterate_complex(const SchrodingerCocycle& c, double x, long long n);

// Lyapunov exponent estimate: average of (1/n) ln ||A_n(x)|| over `grid`
// equidistributed phases.  Nats per step.
double lyapunov(const SchrodingerCocycle& c, long long n, int grid);

// Same estimator at complex energy (Im E > 0 allowed; Im E = 0 falls back to
// the real path).
double lyapunov_complex(const SchrodingerCocycle& c, long long n, int grid);

// Fibered rotation number in [0, 1/2], from the winding of the projective
// (Prufer) orbit started at (x0, angle 0).  Each passage of the orbit
// direction through the vertical is a transversal half-turn crossing, so the
// accumulated angle increment equals pi * (number of sign changes of the
// solution sequence); the Birkhoff average is crossings / (2n).
// Related to the IDS by N(E) = 1 - 2 rho.
double rotation_number(const SchrodingerCocycle& c, long long n, double x0);

struct OrbitStats {
    long long n = 0;
    int phases = 0;
    double lyap = 0;          // nats per step
    double sup_norm = 0;      // sup of ||A_s||_HS over orbit and grid (may overflow to inf)
    double sup_log_norm = 0;  // ln of the same sup, always finite
    double rotation = 0;
    // growth fits over the dyadic tail of the horizon
    double poly_fit_slope = 0;    // d ln sup_s / d ln s
    double loglin_fit_slope = 0;  // d ln sup_s / d s
};

// sup_{s <= n_max} sup_grid ||A_s(x)||_HS, log-scale safe, plus growth fits.
OrbitStats boundedness_probe(const SchrodingerCocycle& c, long long n_max, int grid);

// Sufficient-condition probe for a uniformly hyperbolic splitting: the
// singular gap of A_n(x) exceeds e^{n tol} on every grid phase and the most
// contracted directions vary consistently between neighbouring phases.
bool uniform_hyperbolicity_test(const SchrodingerCocycle& c, long long n, int grid,
                                double tol);

// One row of a parameter sweep; serializes to the CSV schema
// lambda, alpha, E_re, E_im, n, lyap, rotation, sup_norm.
struct SweepRow {
    double lambda, alpha, E_re, E_im;
    long long n;
    double lyap, rotation, sup_norm;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& r);

}  // namespace amo
