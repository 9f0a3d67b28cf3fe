#pragma once

#include <string>
#include <vector>

#include "amo/halfplane.hpp"
#include "amo/intervals.hpp"
#include "amo/mat2.hpp"

namespace amo {

// Spectral data of the rational-frequency operator at coupling lambda,
// frequency p/q and phase theta: the q bands where |tr A_q| <= 2, ordered
// left to right, with the per-band rotation label rho in (0, 1/2) defined by
// tr A_q = 2 cos(2 pi rho).
struct Band {
    Interval range;
    bool trace_increasing;               // orientation of tr across the band
    std::vector<std::pair<double, double>> rho_samples;  // sparse (E, rho) table
};

struct BandSpectrum {
    double lambda = 0;
    long long p = 0, q = 1;
    double theta = 0;
    std::vector<Band> bands;                 // exactly q
    std::vector<int> collapsed_gaps;         // gap index k: band k and k+1 touch (1-based)

    double alpha() const { return static_cast<double>(p) / static_cast<double>(q); }
    std::vector<Interval> intervals() const {
        std::vector<Interval> v;
        v.reserve(bands.size());
        for (const auto& b : bands) v.push_back(b.range);
        return v;
    }
};

// tr A_q(theta) at energy E: the discriminant, a degree-q polynomial in E
// evaluated stably as the exact q-step matrix product.
double discriminant(double lambda, long long p, long long q, double theta, double E);

// The q-step transfer matrix itself.
Mat2 period_matrix(double lambda, long long p, long long q, double theta, double E);

// Band structure by adaptive sign-change scan of |tr|-2 plus bisection of the
// edges to 1e-12.  Interior trace extrema reaching +-2 split collapsed gaps,
// which are recorded in collapsed_gaps.  Throws BandResolutionFailure when
// the count cannot be brought to q.
BandSpectrum bands(double lambda, long long p, long long q, double theta);

// rho(theta, E) = arccos(tr/2) / (2 pi) in (0, 1/2); E must lie in a band.
double band_rho(const BandSpectrum& bs, double E);

// Integrated density of states of the rational model, normalized to [0, 1]:
// inside band k (1-based),
//   q N(E) = k - 1 + s 2 rho + (1 - s)/2,  s = (-1)^{q+k-1},
// constant k/q across the gap after band k.
double ids_periodic(const BandSpectrum& bs, double E);

// Spectral density d mu / dE = (1/pi) phi(m(theta,E)) with m the elliptic
// fixed point of A_q(theta); E must be strictly inside a band (EdgeSingularity
// within 1e-10 of |tr| = 2).  Total integral over all bands is 2.
double density_periodic(const BandSpectrum& bs, double E);

// Fixed point m(theta, E) of A_q(theta) in H.
HPoint band_m_point(const BandSpectrum& bs, double E);

// mu_theta-mass of one band computed by quadrature with the edge substitution
// E = edge +- t^2 (the density has an inverse-square-root edge blowup).
double band_measure(const BandSpectrum& bs, int band_index);

// Union of band spectra over a theta-grid of size theta_samples (>= 2q) plus
// the extremal phases 0 and 1/(2q), merged into maximal intervals.
std::vector<Interval> spectrum_union(double lambda, long long p, long long q,
                                     int theta_samples);

// Energies within the bands where 1/q^2 < rho < 1/2 - 1/q^2 (empty for
// q <= 2, where the defining interval is empty).
struct XSet {
    double lambda = 0;
    long long p = 0, q = 1;
    double theta = 0;
    std::vector<Interval> intervals;
};

XSet x_set(const BandSpectrum& bs);

// mu_theta-mass of bands \ x_set (edge slivers), for the 4/q bound check.
double x_set_complement_mass(const BandSpectrum& bs, const XSet& xs);

// Lebesgue measure of spectrum_union(p/q) \ spectrum_union(p'/q').
double spectra_gap_measure(double lambda, long long p, long long q, long long p2,
                           long long q2);

// sup over X-set energies (64 per band, uniform in rho) and a theta-grid of
// size 4q of ln phi(m(x, E)), with the sup/q ratio for the o(q) trend chart.
// Non-elliptic (x, E) pairs (possible at small q) are skipped and counted.
struct PhiSupReport {
    double sup_log = 0;
    double ratio = 0;  // sup_log / q
    long long skipped = 0;
    long long sampled = 0;
};

PhiSupReport phi_m_sup_log(const BandSpectrum& bs);

// ---- eigenvalue-counting oracle -------------------------------------------
//
// Independent IDS oracle: the 4q-site antiperiodic restriction of the
// operator (diagonal 2 lambda cos(2 pi (theta + j p/q)), off-diagonal 1,
// corners -1) pools the q-site Bloch matrices at phases {1/8, 3/8, 5/8, 7/8}.
// Dense Jacobi eigensolve; the mid-rank counting function
// (#strictly-below + #below-or-equal) / 2 / (4q) equals N exactly at every
// eigenvalue.  Used for q <= 200.
struct CountingOracle {
    std::vector<double> eigenvalues;  // sorted, size 4q
    long long q = 0;

    // mid-rank counting fraction at eigenvalue E (matched within match_tol)
    double counting_fraction(double E, double match_tol = 1e-8) const;
};

CountingOracle counting_oracle(double lambda, long long p, long long q, double theta);

}  // namespace amo
