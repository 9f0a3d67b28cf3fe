#include "amo/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "amo/errors.hpp"
#include "amo/jacobi.hpp"

namespace amo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEdgeBisectTol = 1e-12;
constexpr double kCollapseTol = 1e-12;

void check_rational(long long p, long long q) {
    if (q < 1) throw std::invalid_argument("rational frequency: q >= 1");
    if (q > 2000) throw std::invalid_argument("rational frequency: q <= 2000");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("rational frequency: gcd(p,q) = 1");
}

// Gauss-Legendre nodes/weights on [-1,1], Newton refinement of Chebyshev
// initial guesses.
struct Quadrature {
    std::vector<double> x, w;
};

Quadrature gauss_legendre(int n) {
    Quadrature gl;
    gl.x.resize(n);
    gl.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        gl.x[i] = -t;
        gl.x[n - 1 - i] = t;
        gl.w[i] = gl.w[n - 1 - i] = 2.0 / ((1 - t * t) * dp * dp);
    }
    return gl;
}

const Quadrature& edge_quadrature() {
    static const Quadrature gl = gauss_legendre(64);
    return gl;
}

}  // namespace

Mat2 period_matrix(double lambda, long long p, long long q, double theta, double E) {
    double alpha = static_cast<double>(p) / static_cast<double>(q);
    Mat2 acc;
    for (long long k = 0; k < q; ++k) {
        double x = theta + static_cast<double>(k) * alpha;
        double v = 2.0 * lambda * std::cos(kTwoPi * x);
        acc = Mat2{E - v, -1.0, 1.0, 0.0} * acc;
    }
    return acc;
}

double discriminant(double lambda, long long p, long long q, double theta, double E) {
    check_rational(p, q);
    return period_matrix(lambda, p, q, theta, E).trace();
}

namespace {

// |tr| - 2, negative inside bands.
double gap_fn(double lambda, long long p, long long q, double theta, double E) {
    return std::abs(period_matrix(lambda, p, q, theta, E).trace()) - 2.0;
}

double bisect_edge(double lambda, long long p, long long q, double theta, double e_out,
                   double e_in) {
    // gap_fn > 0 at e_out, < 0 at e_in
    for (int it = 0; it < 80 && std::abs(e_out - e_in) > kEdgeBisectTol; ++it) {
        double mid = 0.5 * (e_out + e_in);
        if (gap_fn(lambda, p, q, theta, mid) > 0)
            e_out = mid;
        else
            e_in = mid;
    }
    return 0.5 * (e_out + e_in);
}

// Golden-section extremum of tr inside [a, b]; maximize tells the direction.
double refine_extremum(double lambda, long long p, long long q, double theta, double a,
                       double b, bool maximize) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    auto val = [&](double e) {
        double t = period_matrix(lambda, p, q, theta, e).trace();
        return maximize ? t : -t;
    };
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 90 && (b - a) > 1e-14; ++it) {
        if (f1 > f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = val(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = val(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

BandSpectrum bands(double lambda, long long p, long long q, double theta) {
    check_rational(p, q);
    BandSpectrum bs;
    bs.lambda = lambda;
    bs.p = p;
    bs.q = q;
    bs.theta = theta;

    double hull = 2.0 + 2.0 * std::abs(lambda);
    double lo = -hull - 0.5, hi = hull + 0.5;

    auto trace_at = [&](double E) { return period_matrix(lambda, p, q, theta, E).trace(); };

    long long grid_n = std::max<long long>(4096, 16 * q);
    for (int refinement = 0; refinement < 9; ++refinement, grid_n *= 2) {
        std::vector<double> Eg(grid_n + 1), tg(grid_n + 1);
        for (long long i = 0; i <= grid_n; ++i) {
            Eg[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_n);
            tg[i] = trace_at(Eg[i]);
        }

        // maximal runs with |tr| <= 2, edges bisected
        std::vector<Interval> raw;
        long long i = 0;
        while (i <= grid_n) {
            if (std::abs(tg[i]) > 2.0) { ++i; continue; }
            long long j = i;
            while (j + 1 <= grid_n && std::abs(tg[j + 1]) <= 2.0) ++j;
            double left = (i == 0) ? Eg[0]
                                   : bisect_edge(lambda, p, q, theta, Eg[i - 1], Eg[i]);
            double right = (j == grid_n)
                               ? Eg[grid_n]
                               : bisect_edge(lambda, p, q, theta, Eg[j + 1], Eg[j]);
            raw.emplace_back(left, right);
            i = j + 1;
        }

        // split runs at interior trace extrema that reach +-2 (collapsed or
        // unresolved narrow gaps)
        std::vector<Interval> split;
        for (const auto& run : raw) {
            std::vector<double> cuts;  // split points (shared edges)
            std::vector<std::pair<double, double>> inner_gaps;
            long long i0 = static_cast<long long>(std::ceil((run.lo - lo) / (hi - lo) * grid_n));
            long long i1 = static_cast<long long>(std::floor((run.hi - lo) / (hi - lo) * grid_n));
            for (long long k = std::max<long long>(i0 + 1, 1);
                 k < std::min<long long>(i1, grid_n); ++k) {
                bool loc_max = tg[k] >= tg[k - 1] && tg[k] >= tg[k + 1] && tg[k] > 0;
                bool loc_min = tg[k] <= tg[k - 1] && tg[k] <= tg[k + 1] && tg[k] < 0;
                if (!loc_max && !loc_min) continue;
                double es = refine_extremum(lambda, p, q, theta, Eg[k - 1], Eg[k + 1], loc_max);
                double ts = trace_at(es);
                if (std::abs(ts) < 2.0 - 1e-9) continue;  // genuine interior dip, no split
                if (std::abs(ts) <= 2.0) {
                    cuts.push_back(es);  // touching: collapsed gap
                } else {
                    // narrow open gap: recover both edges around the extremum
                    double e_l = bisect_edge(lambda, p, q, theta, es, Eg[k - 1]);
                    double e_r = bisect_edge(lambda, p, q, theta, es, Eg[k + 1]);
                    if (e_r - e_l < kCollapseTol)
                        cuts.push_back(es);
                    else
                        inner_gaps.emplace_back(e_l, e_r);
                }
            }
            std::vector<double> edges{run.lo};
            for (double c : cuts) { edges.push_back(c); edges.push_back(c); }
            for (auto& g : inner_gaps) { edges.push_back(g.first); edges.push_back(g.second); }
            edges.push_back(run.hi);
            std::sort(edges.begin(), edges.end());
            for (std::size_t e = 0; e + 1 < edges.size(); e += 2)
                split.emplace_back(edges[e], edges[e + 1]);
        }

        if (static_cast<long long>(split.size()) == q) {
            std::sort(split.begin(), split.end(),
                      [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
            for (const auto& iv : split) {
                Band b{iv, true, {}};
                double w = iv.length();
                double t_lo = trace_at(iv.lo + 0.25 * w);
                double t_hi = trace_at(iv.lo + 0.75 * w);
                b.trace_increasing = t_hi > t_lo;
                for (int s = 1; s <= 9; ++s) {
                    double E = iv.lo + w * s / 10.0;
                    double tr = std::clamp(trace_at(E) / 2.0, -1.0, 1.0);
                    b.rho_samples.emplace_back(E, std::acos(tr) / kTwoPi);
                }
                bs.bands.push_back(std::move(b));
            }
            for (std::size_t k = 0; k + 1 < bs.bands.size(); ++k)
                if (bs.bands[k + 1].range.lo - bs.bands[k].range.hi < kCollapseTol)
                    bs.collapsed_gaps.push_back(static_cast<int>(k) + 1);
            return bs;
        }
    }
    throw BandResolutionFailure("bands: could not resolve q bands", lo, hi);
}

double band_rho(const BandSpectrum& bs, double E) {
    double tr = discriminant(bs.lambda, bs.p, bs.q, bs.theta, E);
    if (std::abs(tr) > 2.0 + 1e-12)
        throw std::domain_error("band_rho: E outside bands");
    return std::acos(std::clamp(tr / 2.0, -1.0, 1.0)) / kTwoPi;
}

double ids_periodic(const BandSpectrum& bs, double E) {
    const auto& bands = bs.bands;
    if (E < bands.front().range.lo) return 0.0;
    if (E > bands.back().range.hi) return 1.0;
    for (std::size_t k = 0; k < bands.size(); ++k) {
        if (E > bands[k].range.hi) continue;
        if (E < bands[k].range.lo) return static_cast<double>(k) / bs.q;  // gap after band k
        double rho = band_rho(bs, E);
        double s = ((bs.q + static_cast<long long>(k) + 1 - 1) % 2 == 0) ? 1.0 : -1.0;
        // s = (-1)^{q+k-1} with 1-based band index
        double qN = static_cast<double>(k) + s * 2.0 * rho + (1.0 - s) / 2.0;
        return qN / static_cast<double>(bs.q);
    }
    return 1.0;
}

HPoint band_m_point(const BandSpectrum& bs, double E) {
    Mat2 A = period_matrix(bs.lambda, bs.p, bs.q, bs.theta, E);
    if (std::abs(A.trace()) >= 2.0 - 1e-10)
        throw EdgeSingularity("band_m_point: |tr| within 1e-10 of 2");
    return elliptic_fixed_point(A);
}

double density_periodic(const BandSpectrum& bs, double E) {
    return phi(band_m_point(bs, E)) / kPi;
}

double band_measure(const BandSpectrum& bs, int band_index) {
    const Interval& iv = bs.bands.at(band_index).range;
    const auto& gl = edge_quadrature();
    double w = iv.length();
    double s = std::sqrt(0.5 * w);
    // E = lo + t^2 and E = hi - t^2 tame the 1/sqrt edge blowup
    double total = 0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        double t = s * 0.5 * (gl.x[i] + 1.0);
        double wt = gl.w[i] * s * 0.5;
        total += wt * density_periodic(bs, iv.lo + t * t) * 2.0 * t;
        total += wt * density_periodic(bs, iv.hi - t * t) * 2.0 * t;
    }
    return total;
}

std::vector<Interval> spectrum_union(double lambda, long long p, long long q,
                                     int theta_samples) {
    check_rational(p, q);
    if (theta_samples < 2 * q)
        throw std::invalid_argument("spectrum_union: theta_samples >= 2q");
    std::vector<double> thetas;
    for (int j = 0; j < theta_samples; ++j)
        thetas.push_back(static_cast<double>(j) / theta_samples);
    thetas.push_back(0.0);
    thetas.push_back(1.0 / (2.0 * static_cast<double>(q)));  // extremal phases
    // The k-th band sweeps a connected interval as theta varies continuously
    // (its edges are continuous in theta, extremes attained at the extremal
    // phases), so the union over theta of band k is [min lo_k, max hi_k].
    // A plain union of sampled band intervals would leave spurious holes when
    // lambda^q is large and the trace range dwarfs the band widths.
    std::vector<Interval> hulls;
    bool first = true;
    for (double th : thetas) {
        auto bs = bands(lambda, p, q, th);
        for (std::size_t k = 0; k < bs.bands.size(); ++k) {
            const Interval& iv = bs.bands[k].range;
            if (first)
                hulls.push_back(iv);
            else {
                hulls[k].lo = std::min(hulls[k].lo, iv.lo);
                hulls[k].hi = std::max(hulls[k].hi, iv.hi);
            }
        }
        first = false;
    }
    return merge_union(std::move(hulls), 1e-12);
}

namespace {

// E inside the band at which tr equals target (monotone bisection).
double energy_at_trace(const BandSpectrum& bs, const Band& band, double target) {
    double a = band.range.lo, b = band.range.hi;
    if (!band.trace_increasing) std::swap(a, b);
    // tr(a) <= target <= tr(b) in the oriented sense
    for (int it = 0; it < 80 && std::abs(b - a) > kEdgeBisectTol; ++it) {
        double mid = 0.5 * (a + b);
        double tr = discriminant(bs.lambda, bs.p, bs.q, bs.theta, mid);
        if (tr < target)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace

XSet x_set(const BandSpectrum& bs) {
    XSet xs;
    xs.lambda = bs.lambda;
    xs.p = bs.p;
    xs.q = bs.q;
    xs.theta = bs.theta;
    double rho_lo = 1.0 / (static_cast<double>(bs.q) * bs.q);
    double rho_hi = 0.5 - rho_lo;
    if (rho_lo >= rho_hi) return xs;  // empty for q <= 2
    double t_hi = 2.0 * std::cos(kTwoPi * rho_lo);   // trace at rho = 1/q^2
    double t_lo = 2.0 * std::cos(kTwoPi * rho_hi);   // = -t_hi
    for (const auto& band : bs.bands) {
        double e1 = energy_at_trace(bs, band, t_lo);
        double e2 = energy_at_trace(bs, band, t_hi);
        if (e2 < e1) std::swap(e1, e2);
        xs.intervals.emplace_back(e1, e2);
    }
    return xs;
}

double x_set_complement_mass(const BandSpectrum& bs, const XSet& xs) {
    const auto& gl = edge_quadrature();
    double mass = 0;
    for (std::size_t k = 0; k < bs.bands.size(); ++k) {
        const Interval& band = bs.bands[k].range;
        const Interval& x = xs.intervals.empty() ? band : xs.intervals[k];
        if (xs.intervals.empty()) {
            mass += band_measure(bs, static_cast<int>(k));
            continue;
        }
        // left sliver [band.lo, x.lo], substitution at the band edge
        auto sliver = [&](double edge, double inner, int sign) {
            double len = std::abs(inner - edge);
            if (len <= 0) return 0.0;
            double s = std::sqrt(len);
            double acc = 0;
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                double t = s * 0.5 * (gl.x[i] + 1.0);
                double wt = gl.w[i] * s * 0.5;
                acc += wt * density_periodic(bs, edge + sign * t * t) * 2.0 * t;
            }
            return acc;
        };
        mass += sliver(band.lo, x.lo, +1);
        mass += sliver(band.hi, x.hi, -1);
    }
    return mass;
}

double spectra_gap_measure(double lambda, long long p, long long q, long long p2,
                           long long q2) {
    auto u1 = spectrum_union(lambda, p, q, static_cast<int>(2 * q));
    auto u2 = spectrum_union(lambda, p2, q2, static_cast<int>(2 * q2));
    return difference_measure(u1, u2);
}

PhiSupReport phi_m_sup_log(const BandSpectrum& bs) {
    PhiSupReport rep;
    XSet xs = x_set(bs);
    if (xs.intervals.empty()) return rep;
    double rho_lo = 1.0 / (static_cast<double>(bs.q) * bs.q);
    double rho_hi = 0.5 - rho_lo;
    long long phases = 4 * bs.q;
    for (std::size_t k = 0; k < bs.bands.size(); ++k) {
        const Band& band = bs.bands[k];
        for (int s = 0; s < 64; ++s) {
            double rho = rho_lo + (rho_hi - rho_lo) * (s + 0.5) / 64.0;
            double tr = 2.0 * std::cos(kTwoPi * rho);
            double E = energy_at_trace(bs, band, tr);
            for (long long j = 0; j < phases; ++j) {
                double x = bs.theta + static_cast<double>(j) / static_cast<double>(phases);
                Mat2 A = period_matrix(bs.lambda, bs.p, bs.q, x, E);
                ++rep.sampled;
                if (std::abs(A.trace()) >= 2.0 - 1e-12) {
                    ++rep.skipped;
                    continue;
                }
                double lp = std::log(phi(elliptic_fixed_point(A)));
                rep.sup_log = std::max(rep.sup_log, lp);
            }
        }
    }
    rep.ratio = rep.sup_log / static_cast<double>(bs.q);
    return rep;
}

CountingOracle counting_oracle(double lambda, long long p, long long q, double theta) {
    check_rational(p, q);
    if (q > 200) throw std::invalid_argument("counting_oracle: q <= 200");
    int n = static_cast<int>(4 * q);
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    double alpha = static_cast<double>(p) / static_cast<double>(q);
    for (int j = 0; j < n; ++j)
        at(j, j) = 2.0 * lambda * std::cos(kTwoPi * (theta + (j % q) * alpha));
    for (int j = 0; j + 1 < n; ++j) at(j, j + 1) = at(j + 1, j) = 1.0;
    at(0, n - 1) = at(n - 1, 0) = -1.0;  // antiperiodic corner

    CountingOracle oc;
    oc.q = q;
    oc.eigenvalues = jacobi_eigenvalues(std::move(a), n);
    return oc;
}

double CountingOracle::counting_fraction(double E, double match_tol) const {
    long long below = 0, tied = 0;
    for (double e : eigenvalues) {
        if (e < E - match_tol)
            ++below;
        else if (e <= E + match_tol)
            ++tied;
    }
    return (static_cast<double>(below) + 0.5 * static_cast<double>(tied)) /
           static_cast<double>(eigenvalues.size());
}

}  // namespace amo
