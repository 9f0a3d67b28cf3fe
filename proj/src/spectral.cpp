#include "amo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "amo/errors.hpp"
#include "amo/io.hpp"

namespace amo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr long long kMaxDepth = 1ll << 20;
}  // namespace

// One backward pullback pass of length `depth`.  The half-line recursions
//   m+(theta) = -1 / (m+(theta+alpha) + E - v(theta))
//   m-(theta) = E - v(theta-alpha) - 1 / m-(theta-alpha)
// both map H into H when Im E > 0 (they are the cocycle equivariance
// S(theta).(-+ m^{+-}(theta)) = -+ m^{+-}(theta+alpha) read toward the seed).
static std::complex<double> pullback(const SchrodingerCocycle& c, double theta, Side side,
                                     long long depth) {
    std::complex<double> w{0.0, 1.0};  // seed i at the far end
    if (side == Side::plus) {
        for (long long j = depth - 1; j >= 0; --j) {
            double v = 2.0 * c.lambda *
                       std::cos(kTwoPi * (theta + static_cast<double>(j) * c.alpha));
            w = -1.0 / (w + c.E - v);
        }
    } else {
        for (long long j = depth; j >= 1; --j) {
            double v = 2.0 * c.lambda *
                       std::cos(kTwoPi * (theta - static_cast<double>(j) * c.alpha));
            w = c.E - v - 1.0 / w;
        }
    }
    return w;
}

HPoint m_function(const SchrodingerCocycle& c, double theta, Side side, long long depth,
                  double tol) {
    if (!(c.E.imag() > 0)) throw std::domain_error("m_function: Im E > 0");
    if (depth < 16) throw std::invalid_argument("m_function: depth >= 16");
    if (!(tol > 0)) throw std::invalid_argument("m_function: tol > 0");

    std::complex<double> prev = pullback(c, theta, side, depth);
    for (long long d = 2 * depth; d <= kMaxDepth; d *= 2) {
        std::complex<double> cur = pullback(c, theta, side, d);
        if (hyp_dist(prev, cur) < tol) return HPoint(cur);
        prev = cur;
    }
    throw ContractionFailure("m_function: no convergence up to depth 2^20");
}

std::complex<double> borel_M(const HPoint& m_plus, const HPoint& m_minus) {
    std::complex<double> mp = m_plus.to_complex(), mm = m_minus.to_complex();
    std::complex<double> den = mp + mm;
    if (std::abs(den) < 1e-14) throw DegeneratePair("borel_M: m+ + m- vanished");
    return (mp * mm - 1.0) / den;
}

MFunctionSample::MFunctionSample(double E_, double eps_, HPoint mp, HPoint mm)
    : E(E_), eps(eps_), m_plus(mp), m_minus(mm), M(borel_M(mp, mm)) {
    if (!(M.imag() > 0)) throw DegeneratePair("MFunctionSample: Im M <= 0");
}

MFunctionSample m_sample(double lambda, double alpha, double theta, double E, double eps,
                         long long depth, double tol) {
    if (!(eps > 0)) throw std::domain_error("m_sample: eps > 0");
    SchrodingerCocycle c(lambda, alpha, {E, eps});
    HPoint mp = m_function(c, theta, Side::plus, depth, tol);
    HPoint mm = m_function(c, theta, Side::minus, depth, tol);
    return {E, eps, mp, mm};
}

double density_estimate(double lambda, double alpha, double theta, double E, double eps,
                        long long depth, double tol) {
    if (!(eps > 0 && eps <= 0.1)) throw std::domain_error("density_estimate: 0 < eps <= 0.1");
    return m_sample(lambda, alpha, theta, E, eps, depth, tol).M.imag() / kPi;
}

Lemma2000Report lemma2000_check(double lambda, double alpha, double theta, double E,
                                double eps, double safety_C, int grid) {
    if (!(eps > 0 && eps <= 0.1)) throw std::domain_error("lemma2000_check: 0 < eps <= 0.1");
    Lemma2000Report rep{};
    rep.E = E;
    rep.eps = eps;
    rep.safety_C = safety_C;
    auto sample = m_sample(lambda, alpha, theta, E, eps, 64, 1e-9);
    rep.im_M = sample.M.imag();
    rep.mu_proxy = 2.0 * eps * rep.im_M;
    rep.horizon = static_cast<long long>(std::ceil(safety_C / eps));
    SchrodingerCocycle c(lambda, alpha, {E, 0.0});
    OrbitStats st = boundedness_probe(c, rep.horizon, grid);
    rep.sup_norm_sq = std::exp(2.0 * st.sup_log_norm);
    rep.rhs = eps * rep.sup_norm_sq;
    rep.ratio = rep.mu_proxy / rep.rhs;
    rep.pass = rep.ratio <= safety_C;
    return rep;
}

double IDSTable::operator()(double E) const {
    if (grid.empty()) throw std::logic_error("IDSTable: empty");
    if (E <= grid.front().first) return grid.front().second;
    if (E >= grid.back().first) return grid.back().second;
    auto it = std::lower_bound(grid.begin(), grid.end(), E,
                               [](const auto& a, double x) { return a.first < x; });
    auto [e1, n1] = *it;
    if (e1 == E) return n1;
    auto [e0, n0] = *(it - 1);
    double t = (E - e0) / (e1 - e0);
    return n0 + t * (n1 - n0);
}

double IDSTable::local_spacing(double E, double eps) const {
    auto lo_it = std::lower_bound(grid.begin(), grid.end(), E - eps,
                                  [](const auto& a, double x) { return a.first < x; });
    auto hi_it = std::upper_bound(grid.begin(), grid.end(), E + eps,
                                  [](double x, const auto& a) { return x < a.first; });
    if (lo_it != grid.begin()) --lo_it;
    double worst = 0;
    for (auto it = lo_it; it + 1 < hi_it; ++it)
        worst = std::max(worst, (it + 1)->first - it->first);
    return worst;
}

IDSTable ids_table_periodic(const BandSpectrum& bs, int nodes_per_band) {
    if (nodes_per_band < 2) throw std::invalid_argument("ids_table_periodic: nodes >= 2");
    IDSTable t;
    t.lambda = bs.lambda;
    t.alpha = bs.alpha();
    t.source = IDSTable::Source::periodic_formula;
    t.grid.emplace_back(bs.bands.front().range.lo - 0.5, 0.0);
    for (const auto& band : bs.bands) {
        double w = band.range.length();
        for (int i = 0; i <= nodes_per_band; ++i) {
            double E = band.range.lo + w * i / nodes_per_band;
            t.grid.emplace_back(E, ids_periodic(bs, E));
        }
    }
    t.grid.emplace_back(bs.bands.back().range.hi + 0.5, 1.0);
    // collapse duplicate abscissae from touching bands
    t.grid.erase(std::unique(t.grid.begin(), t.grid.end(),
                             [](const auto& a, const auto& b) { return a.first == b.first; }),
                 t.grid.end());
    return t;
}

IDSTable ids_table_rotation(double lambda, double alpha, double theta, double E_lo,
                            double E_hi, int points, long long n) {
    if (points < 2) throw std::invalid_argument("ids_table_rotation: points >= 2");
    IDSTable t;
    t.lambda = lambda;
    t.alpha = alpha;
    t.source = IDSTable::Source::rotation_number;
    t.grid.emplace_back(E_lo - 0.5, 0.0);
    double prev = 0.0;
    for (int i = 0; i < points; ++i) {
        double E = E_lo + (E_hi - E_lo) * i / (points - 1);
        SchrodingerCocycle c(lambda, alpha, {E, 0.0});
        double N = 1.0 - 2.0 * rotation_number(c, n, theta);
        N = std::max(N, prev);  // enforce monotonicity against estimator noise
        prev = N;
        t.grid.emplace_back(E, N);
    }
    t.grid.emplace_back(E_hi + 0.5, 1.0);
    return t;
}

IDSTable ids_table_eigencount(double lambda, long long p, long long q, double theta) {
    CountingOracle oc = counting_oracle(lambda, p, q, theta);
    IDSTable t;
    t.lambda = lambda;
    t.alpha = static_cast<double>(p) / static_cast<double>(q);
    t.source = IDSTable::Source::eigenvalue_count;
    t.grid.emplace_back(oc.eigenvalues.front() - 0.5, 0.0);
    for (double e : oc.eigenvalues) {
        double N = oc.counting_fraction(e);
        if (!t.grid.empty() && e == t.grid.back().first) continue;
        N = std::max(N, t.grid.back().second);
        t.grid.emplace_back(e, N);
    }
    t.grid.emplace_back(oc.eigenvalues.back() + 0.5, 1.0);
    return t;
}

double thouless_L(const IDSTable& ids, std::complex<double> E) {
    // Segment [e0,e1] with N linear of slope s contributes
    // s * [F(e1) - F(e0)] with F(t) = Re[(t - E)(ln(t - E) - 1)].  F is
    // continuous through the log singularity (F -> 0 there), so the exact
    // antiderivative of the linear-density segment serves as the singular
    // split: no further local approximation is needed.
    auto F = [&E](double t) -> double {
        std::complex<double> d = t - E;
        if (std::abs(d) < 1e-300) return 0.0;
        return (d * (std::log(d) - 1.0)).real();
    };
    double L = 0;
    for (std::size_t i = 0; i + 1 < ids.grid.size(); ++i) {
        auto [e0, n0] = ids.grid[i];
        auto [e1, n1] = ids.grid[i + 1];
        if (n1 == n0 || e1 == e0) continue;
        double slope = (n1 - n0) / (e1 - e0);
        L += slope * (F(e1) - F(e0));
    }
    return L;
}

HolderReport holder_probe(const IDSTable& ids, const std::vector<double>& scales,
                          int sample_energies) {
    if (scales.size() < 2) throw std::invalid_argument("holder_probe: >= 2 scales");
    double eps_max = *std::max_element(scales.begin(), scales.end());
    double eps_min = *std::min_element(scales.begin(), scales.end());

    HolderReport rep;
    rep.c_fit = std::numeric_limits<double>::infinity();
    rep.min_exponent = std::numeric_limits<double>::infinity();
    rep.max_exponent = -std::numeric_limits<double>::infinity();

    for (int i = 0; i < sample_energies; ++i) {
        // quantile sampling keeps energies inside the increasing part of N
        double level = 0.05 + 0.9 * (i + 0.5) / sample_energies;
        auto it = std::lower_bound(ids.grid.begin(), ids.grid.end(), level,
                                   [](const auto& a, double l) { return a.second < l; });
        if (it == ids.grid.begin() || it == ids.grid.end()) continue;
        double E = it->first;
        if (E - eps_max <= ids.lo() || E + eps_max >= ids.hi()) continue;
        if (ids.local_spacing(E, eps_min) > 0.5 * eps_min)
            throw ResolutionError("holder_probe: IDS grid too coarse for requested eps");

        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (double eps : scales) {
            double mod = ids(E + eps) - ids(E - eps);
            if (mod <= 0) continue;  // flat window; excluded by sampling rule
            double lx = std::log(eps), ly = std::log(mod);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++m;
            rep.c_fit = std::min(rep.c_fit, mod / std::pow(eps, 1.5));
        }
        if (m < 2) continue;
        double slope = (static_cast<double>(m) * sxy - sx * sy) /
                       (static_cast<double>(m) * sxx - sx * sx);
        rep.energies.push_back(E);
        rep.exponents.push_back(slope);
        rep.min_exponent = std::min(rep.min_exponent, slope);
        rep.max_exponent = std::max(rep.max_exponent, slope);
    }
    rep.pass_upper = rep.min_exponent >= 0.45;
    rep.pass_lower = rep.max_exponent <= 1.5 + 0.1 && rep.c_fit > 0;
    return rep;
}

std::vector<std::pair<double, double>> kotani_symmetry_chart(
    double lambda, double alpha, double theta, double E,
    const std::vector<double>& eps_list) {
    std::vector<std::pair<double, double>> chart;
    for (double eps : eps_list) {
        auto s = m_sample(lambda, alpha, theta, E, eps);
        HPoint reflected(-s.m_minus.re, s.m_minus.im);  // -conj(m-)
        chart.emplace_back(eps, hyp_dist(s.m_plus, reflected));
    }
    return chart;
}

std::string MFunctionSample::to_json() const {
    nlohmann::json j;
    j["E"] = E;
    j["eps"] = eps;
    j["m_plus"] = {{"re", m_plus.re}, {"im", m_plus.im}};
    j["m_minus"] = {{"re", m_minus.re}, {"im", m_minus.im}};
    j["M"] = {{"re", M.real()}, {"im", M.imag()}};
    return j.dump(2);
}

std::string Lemma2000Report::to_json() const {
    nlohmann::json j;
    j["E"] = E;
    j["eps"] = eps;
    j["im_M"] = im_M;
    j["mu_proxy"] = mu_proxy;
    j["horizon"] = horizon;
    j["sup_norm_sq"] = sup_norm_sq;
    j["rhs"] = rhs;
    j["ratio"] = ratio;
    j["safety_C"] = safety_C;
    j["pass"] = pass;
    return j.dump(2);
}

std::string IDSTable::to_json() const {
    nlohmann::json j;
    j["lambda"] = lambda;
    j["alpha"] = alpha;
    switch (source) {
        case Source::rotation_number: j["source"] = "rotation-number"; break;
        case Source::eigenvalue_count: j["source"] = "eigenvalue-count"; break;
        case Source::periodic_formula: j["source"] = "periodic-formula"; break;
    }
    auto g = nlohmann::json::array();
    for (const auto& [e, n] : grid) g.push_back({e, n});
    j["grid"] = g;
    return j.dump();
}

std::string HolderReport::to_json() const {
    nlohmann::json j;
    j["energies"] = energies;
    j["exponents"] = exponents;
    j["min_exponent"] = min_exponent;
    j["max_exponent"] = max_exponent;
    j["c_fit"] = c_fit;
    j["pass_upper"] = pass_upper;
    j["pass_lower"] = pass_lower;
    return j.dump(2);
}

}  // namespace amo
