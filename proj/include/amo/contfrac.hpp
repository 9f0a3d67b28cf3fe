#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amo {

// Continued-fraction expansion of a frequency alpha in (0,1): partial
// quotients a_1..a_n and convergents p_k/q_k with
// p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}.
struct ContinuedFraction {
    double alpha = 0;
    std::vector<long long> quotients;
    std::vector<std::pair<long long, long long>> convergents;  // (p_k, q_k)
    bool exact_rational = false;  // Gauss remainder hit the 1e-15 floor

    std::size_t depth() const { return convergents.size(); }
    long long p(std::size_t k) const { return convergents.at(k).first; }
    long long q(std::size_t k) const { return convergents.at(k).second; }

    std::string to_json() const;
};

// Gauss-map expansion, truncated at max_terms or before the first q_k > q_cap.
// Rational alpha (remainder < 1e-15) sets exact_rational and stops.
ContinuedFraction expand(double alpha, int max_terms, long long q_cap = (1ll << 62));

// Exact synthetic frequency from prescribed partial quotients; alpha is
// materialized as the deepest convergent ratio.  This is how Liouville-type
// test frequencies are built: the (p_k, q_k) are exact integers even when no
// double can represent alpha - p/q.
ContinuedFraction from_quotients(const std::vector<long long>& quotients);

// beta(alpha) = limsup ln(q_{k+1})/q_k is not finitely computable; this holds
// the finite-depth evidence only.
struct BetaEstimate {
    int depth = 0;
    std::vector<double> ratios;  // ln(q_{k+1})/q_k for each computed level
    double beta_hat = 0;         // max over the last `tail` ratios
};

BetaEstimate beta_estimate(const ContinuedFraction& cf, int tail);

// Distance from x to the nearest integer, in [0, 1/2].
double torus_norm(double x);

// epsilon0-resonances of (theta, alpha): integers k with
// |2 theta - k alpha| <= e^{-|k| eps0} and minimal over |j| <= |k|
// (non-strict minimum; ties are recorded).  Exhaustive over |k| <= K.
struct ResonanceReport {
    double theta = 0;
    double alpha = 0;
    double epsilon0 = 0;
    long long search_bound = 0;             // K
    std::vector<long long> resonances;      // ordered by |k|, 0 always present
    std::vector<long long> ties;            // k whose minimum is attained elsewhere too

    std::string to_json() const;
};

ResonanceReport find_resonances(double theta, double alpha, double epsilon0,
                                long long K = 10000);

}  // namespace amo
