#include "amo/regime.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "amo/cocycle.hpp"
#include "amo/errors.hpp"
#include "amo/spectral.hpp"

namespace amo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::complex<double> TrigPoly::eval(double x) const {
    std::complex<double> s{0, 0};
    for (const auto& [k, c] : coeffs)
        s += c * std::polar(1.0, kTwoPi * static_cast<double>(k) * x);
    return s;
}

void TrigPoly::set_essential_from_support() {
    if (coeffs.empty()) { essential_lo = essential_hi = 0; return; }
    essential_lo = coeffs.begin()->first;
    essential_hi = coeffs.rbegin()->first;
}

TrigPoly truncate(const TrigPoly& series, long long lo, long long hi) {
    TrigPoly out;
    for (const auto& [k, c] : series.coeffs)
        if (lo <= k && k <= hi) out.coeffs[k] = c;
    out.essential_lo = lo;
    out.essential_hi = hi;
    return out;
}

double orbit_sampling_ratio(const TrigPoly& p, double alpha, double x0, long long k) {
    if (k < 1) throw std::invalid_argument("orbit_sampling_ratio: k >= 1");
    double orbit_sup = 0;
    for (long long j = 0; j <= k; ++j)
        orbit_sup = std::max(orbit_sup,
                             std::abs(p.eval(x0 + static_cast<double>(j) * alpha)));
    if (orbit_sup < 1e-300)
        throw DegenerateSample("orbit_sampling_ratio: all orbit samples vanish");
    double dense_sup = 0;
    long long grid = 16 * k;
    for (long long g = 0; g < grid; ++g)
        dense_sup = std::max(dense_sup,
                             std::abs(p.eval(static_cast<double>(g) / static_cast<double>(grid))));
    return dense_sup / orbit_sup;
}

CancellationPair cancellation_identity(const Mat2& B0, const HPoint& z0, long long r,
                                       long long s) {
    if (s < 1 || std::gcd(std::abs(r), s) != 1)
        throw std::invalid_argument("cancellation_identity: r/s in lowest terms");
    if (s <= 2)
        throw std::invalid_argument("cancellation_identity: r/s must not be a multiple of 1/2");
    double lhs = 0;
    for (long long k = 0; k < s; ++k) {
        Mat2 rot = rotation(static_cast<double>(r) * static_cast<double>(k) /
                            static_cast<double>(s));
        lhs += phi(mobius_act(B0 * rot, z0));
    }
    lhs /= static_cast<double>(s);
    double rhs = phi(z0) * phi(mobius_act(B0, HPoint(0.0, 1.0)));
    return {lhs, rhs};
}

EllipticAverage elliptic_average_experiment(const Mat2& B0, double rho, const HPoint& z0,
                                            long long b0, double delta) {
    if (b0 < 10) throw std::invalid_argument("elliptic_average_experiment: b0 >= 10");
    if (!(rho > delta && rho < 0.5 - delta))
        throw std::domain_error("elliptic_average_experiment: rho in (delta, 1/2 - delta)");
    double avg = 0;
    for (long long k = 0; k < b0; ++k)
        avg += phi(mobius_act(B0 * rotation(static_cast<double>(k) * rho), z0));
    avg /= static_cast<double>(b0);
    double bound = phi(z0) * phi(mobius_act(B0, HPoint(0.0, 1.0)));
    return {avg, bound};
}

namespace {

// Periodic-model data at the instance's (theta, E): fixed point, rho, B.
struct PeriodicFrame {
    HPoint m;
    double rho;
    Mat2 B, B_inv;
};

PeriodicFrame make_frame(const RegimeInstance& inst, double E) {
    BandSpectrum bs = bands(inst.lambda, inst.p, inst.q, inst.theta);
    XSet xs = x_set(bs);
    bool inside = false;
    for (const auto& iv : xs.intervals)
        if (iv.lo < E && E < iv.hi) { inside = true; break; }
    if (!inside)
        throw std::domain_error(
            "regime instance: elliptic shadowing undefined near band edges (E not in x_set)");
    PeriodicFrame fr{band_m_point(bs, E), band_rho(bs, E), Mat2::identity(), Mat2::identity()};
    fr.B = upper_triangular_to(fr.m);
    fr.B_inv = fr.B.inverse();
    return fr;
}

double hs_dist(const Mat2& a, const Mat2& b) {
    Mat2 d{a.a - b.a, a.b - b.b, a.c - b.c, a.d - b.d};
    return hs_norm(d);
}

}  // namespace

ShadowReport build_shadowing(const RegimeInstance& inst, double E, long long b) {
    if (b < 1 || b > 10000) throw std::invalid_argument("build_shadowing: 1 <= b <= 1e4");
    if (std::abs(inst.dev) > std::exp(-0.5 * static_cast<double>(inst.q)))
        throw std::domain_error("build_shadowing: |dev| <= e^{-q/2}");
    PeriodicFrame fr = make_frame(inst, E);

    ShadowReport rep;
    rep.q = inst.q;
    rep.b = b;
    rep.rho = fr.rho;

    SchrodingerCocycle c(inst.lambda, inst.alpha_true(), {E, 0.0});
    Mat2 acc;  // Atilde_{kq}(theta), grown incrementally
    std::vector<Mat2> conj(b);
    for (long long k = 0; k < b; ++k) {
        conj[k] = fr.B_inv * acc * fr.B;
        if (k + 1 < b) {
            for (long long s = 0; s < inst.q; ++s) {
                double x = inst.theta +
                           (static_cast<double>(k * inst.q + s)) * c.alpha;
                acc = step_matrix(c, x) * acc;
            }
        }
    }

    // resolve the rotation sign at k = 1
    if (b > 1) {
        double dev_p = hs_dist(conj[1], rotation(fr.rho));
        double dev_m = hs_dist(conj[1], rotation(-fr.rho));
        rep.sign = dev_p <= dev_m ? +1 : -1;
    }
    for (long long k = 0; k < b; ++k) {
        double dev = hs_dist(conj[k], rotation(rep.sign * fr.rho * static_cast<double>(k)));
        rep.deviations.push_back(dev);
        rep.max_dev = std::max(rep.max_dev, dev);
    }
    return rep;
}

DynamicalCancellation dynamical_cancellation(const RegimeInstance& inst, double E,
                                             const HPoint& z, long long b) {
    if (b < 1 || b > 10000) throw std::invalid_argument("dynamical_cancellation: 1 <= b <= 1e4");
    if (std::abs(inst.dev) > std::exp(-0.5 * static_cast<double>(inst.q)))
        throw std::domain_error("dynamical_cancellation: |dev| <= e^{-q/2}");
    PeriodicFrame fr = make_frame(inst, E);

    DynamicalCancellation out;
    out.phi_m = phi(fr.m);
    double gap = std::abs(std::log(phi(z)) - std::log(out.phi_m));
    out.kappa = std::min(2.0, std::exp(gap));
    out.floor = (1.0 + out.kappa * out.kappa) / (2.0 * out.kappa) * out.phi_m;

    SchrodingerCocycle c(inst.lambda, inst.alpha_true(), {E, 0.0});
    Mat2 acc;
    double sum = 0;
    for (long long k = 0; k < b; ++k) {
        sum += phi(mobius_act(acc, z));
        if (k + 1 < b) {
            for (long long s = 0; s < inst.q; ++s) {
                double x = inst.theta + (static_cast<double>(k * inst.q + s)) * c.alpha;
                acc = step_matrix(c, x) * acc;
            }
        }
    }
    out.avg = sum / static_cast<double>(b);
    return out;
}

IntegratedReport integrated_cancellation(const RegimeInstance& inst, long long b,
                                         int samples_per_band, double eps,
                                         long long p_fine, long long q_fine) {
    if (b < 1 || b > 10000) throw std::invalid_argument("integrated_cancellation: 1 <= b <= 1e4");
    if (samples_per_band < 2)
        throw std::invalid_argument("integrated_cancellation: samples_per_band >= 2");

    BandSpectrum bs = bands(inst.lambda, inst.p, inst.q, inst.theta);
    XSet xs = x_set(bs);
    auto fine = spectrum_union(inst.lambda, p_fine, q_fine, static_cast<int>(2 * q_fine));

    // energy sample set: x_set intersected with the fine-approximant spectrum,
    // midpoint rule per X interval piece
    std::vector<std::pair<double, double>> nodes;  // (E, weight)
    for (const auto& iv : xs.intervals) {
        for (const auto& f : fine) {
            double lo = std::max(iv.lo, f.lo), hi = std::min(iv.hi, f.hi);
            if (hi <= lo) continue;
            double h = (hi - lo) / samples_per_band;
            for (int s = 0; s < samples_per_band; ++s)
                nodes.emplace_back(lo + h * (s + 0.5), h);
        }
    }
    if (nodes.empty()) throw std::domain_error("integrated_cancellation: empty energy set");

    IntegratedReport rep;
    rep.b = b;
    rep.eps = eps;
    double alpha = inst.alpha_true();
    for (long long k = 0; k < b; ++k) {
        double theta_k = inst.theta + static_cast<double>(k) * alpha;
        double mass = 0;
        for (const auto& [E, w] : nodes) {
            // phi(m~) = pi * smoothed density
            mass += w * kPi * density_estimate(inst.lambda, alpha, theta_k, E, eps, 64, 1e-7);
        }
        rep.mass_per_k.push_back(mass / (2.0 * kPi));
    }
    rep.mass_k0 = rep.mass_per_k.front();
    rep.mass_avg = std::accumulate(rep.mass_per_k.begin(), rep.mass_per_k.end(), 0.0) /
                   static_cast<double>(b);
    return rep;
}

std::string ShadowReport::to_json() const {
    nlohmann::json j;
    j["q"] = q;
    j["b"] = b;
    j["rho"] = rho;
    j["sign"] = sign;
    j["deviations"] = deviations;
    j["max_dev"] = max_dev;
    return j.dump(2);
}

std::string DynamicalCancellation::to_json() const {
    nlohmann::json j;
    j["avg"] = avg;
    j["floor"] = floor;
    j["kappa"] = kappa;
    j["phi_m"] = phi_m;
    j["ratio"] = avg / floor;
    return j.dump(2);
}

std::string IntegratedReport::to_json() const {
    nlohmann::json j;
    j["b"] = b;
    j["eps"] = eps;
    j["mass_per_k"] = mass_per_k;
    j["mass_k0"] = mass_k0;
    j["mass_avg"] = mass_avg;
    return j.dump(2);
}

}  // namespace amo
