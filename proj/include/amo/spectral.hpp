#pragma once

#include <complex>
#include <string>
#include <vector>

#include "amo/cocycle.hpp"
#include "amo/halfplane.hpp"
#include "amo/periodic.hpp"

namespace amo {

enum class Side { plus, minus };

// Half-line m-function m^+/m^- at complex energy E with Im E > 0, by backward
// Mobius pullback from a seed at distance `depth` along the half-line,
// deepening (doubling) until two successive results are within tol in
// hyperbolic distance.  Contraction comes from Im E > 0.
HPoint m_function(const SchrodingerCocycle& c, double theta, Side side, long long depth,
                  double tol);

// Borel transform combination M = (m+ m- - 1) / (m+ + m-); Im M > 0.
std::complex<double> borel_M(const HPoint& m_plus, const HPoint& m_minus);

struct MFunctionSample {
    double E;
    double eps;
    HPoint m_plus;
    HPoint m_minus;
    std::complex<double> M;

    MFunctionSample(double E_, double eps_, HPoint mp, HPoint mm);
    std::string to_json() const;
};

MFunctionSample m_sample(double lambda, double alpha, double theta, double E, double eps,
                         long long depth = 64, double tol = 1e-10);

// Smoothed spectral density (1/pi) Im M(E + i eps).
double density_estimate(double lambda, double alpha, double theta, double E, double eps,
                        long long depth = 64, double tol = 1e-10);

// Numerical instance of the measure bound
//   mu(E-eps, E+eps) <= C eps sup_{0<=s<=C/eps} ||A_s||_0^2:
// left side realized as 2 eps Im M(E+i eps), right side from the boundedness
// probe over the horizon safety_C / eps.
struct Lemma2000Report {
    double E, eps;
    double im_M;
    double mu_proxy;       // 2 eps Im M
    long long horizon;     // sup taken over s <= horizon
    double sup_norm_sq;    // sup ||A_s||_0^2 over grid and horizon
    double rhs;            // eps * sup_norm_sq
    double ratio;          // mu_proxy / rhs
    double safety_C;
    bool pass;

    std::string to_json() const;
};

Lemma2000Report lemma2000_check(double lambda, double alpha, double theta, double E,
                                double eps, double safety_C = 100.0, int grid = 32);

// Monotone piecewise-linear table of the integrated density of states.
struct IDSTable {
    enum class Source { rotation_number, eigenvalue_count, periodic_formula };

    double lambda = 0;
    double alpha = 0;  // p/q value in the rational case
    Source source = Source::periodic_formula;
    std::vector<std::pair<double, double>> grid;  // (E, N) sorted, N nondecreasing

    double operator()(double E) const;  // monotone piecewise-linear query
    double lo() const { return grid.front().first; }
    double hi() const { return grid.back().first; }
    // smallest local spacing covering [E-eps, E+eps]
    double local_spacing(double E, double eps) const;

    std::string to_json() const;
};

// Exact-formula table for the rational model: nodes_per_band interior nodes
// plus both edges per band, endpoints padded to N=0 / N=1.
IDSTable ids_table_periodic(const BandSpectrum& bs, int nodes_per_band);

// Rotation-number table N = 1 - 2 rho over an energy grid.
IDSTable ids_table_rotation(double lambda, double alpha, double theta, double E_lo,
                            double E_hi, int points, long long n);

// Mid-rank counting table from the antiperiodic eigenvalue oracle.
IDSTable ids_table_eigencount(double lambda, long long p, long long q, double theta);

// Thouless formula L(E) = int ln|E'-E| dN(E'), computed segment-exactly on
// the piecewise-linear table (the log singularity integrates in closed form).
double thouless_L(const IDSTable& ids, std::complex<double> E);

// Local IDS modulus exponents: at each sample energy, the regression slope of
// ln(N(E+eps)-N(E-eps)) against ln eps over dyadic eps.
struct HolderReport {
    std::vector<double> energies;
    std::vector<double> exponents;   // per-energy fitted slope
    double min_exponent = 0;         // upper-modulus side (1/2-Holder check)
    double max_exponent = 0;         // lower-bound side (<= 3/2 + slack)
    double c_fit = 0;                // global min of modulus / eps^{3/2}
    bool pass_upper = false;         // min_exponent >= 0.45
    bool pass_lower = false;         // max_exponent <= 1.6 and c_fit > 0

    std::string to_json() const;
};

HolderReport holder_probe(const IDSTable& ids, const std::vector<double>& scales,
                          int sample_energies = 50);

// Kotani-symmetry probe: hyperbolic distance between m+(E+i eps) and
// -conj(m-(E+i eps)) as eps decreases (charted, never asserted).
std::vector<std::pair<double, double>> kotani_symmetry_chart(
    double lambda, double alpha, double theta, double E, const std::vector<double>& eps_list);

}  // namespace amo
