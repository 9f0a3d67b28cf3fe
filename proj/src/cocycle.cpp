#include "amo/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amo/io.hpp"

namespace amo {

Mat2 step_matrix(const SchrodingerCocycle& c, double x) {
    double v = 2.0 * c.lambda * std::cos(kTwoPi * x);
    return {c.E.real() - v, -1.0, 1.0, 0.0};
}

CMat2 step_matrix_complex(const SchrodingerCocycle& c, double x) {
    double v = 2.0 * c.lambda * std::cos(kTwoPi * x);
    return {c.E - v, {-1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
}

namespace {
constexpr int kRescaleEvery = 32;
}

ScaledMat2 iterate(const SchrodingerCocycle& c, double x, long long n) {
    if (n < 0) throw std::invalid_argument("iterate: n >= 0");
    ScaledMat2 acc;
    for (long long s = 0; s < n; ++s) {
        acc.apply_left(step_matrix(c, x + static_cast<double>(s) * c.alpha));
        if ((s + 1) % kRescaleEvery == 0) acc.rescale();
    }
    return acc;
}

ScaledCMat2 iterate_complex(const SchrodingerCocycle& c, double x, long long n) {
    if (n < 0) throw std::invalid_argument("iterate: n >= 0");
    ScaledCMat2 acc;
    for (long long s = 0; s < n; ++s) {
        acc.apply_left(step_matrix_complex(c, x + static_cast<double>(s) * c.alpha));
        if ((s + 1) % kRescaleEvery == 0) acc.rescale();
    }
    return acc;
}

double lyapunov(const SchrodingerCocycle& c, long long n, int grid) {
    if (n < 1000) throw std::invalid_argument("lyapunov: n >= 1000");
    if (grid < 32) throw std::invalid_argument("lyapunov: grid >= 32");
    double sum = 0;
    for (int g = 0; g < grid; ++g) {
        double x = static_cast<double>(g) / grid + kPhaseOffset;
        sum += iterate(c, x, n).log_op_norm();
    }
    return sum / (static_cast<double>(n) * grid);
}

double lyapunov_complex(const SchrodingerCocycle& c, long long n, int grid) {
    if (c.real_energy()) return lyapunov(c, n, grid);
    if (n < 1000) throw std::invalid_argument("lyapunov: n >= 1000");
    if (grid < 32) throw std::invalid_argument("lyapunov: grid >= 32");
    double sum = 0;
    for (int g = 0; g < grid; ++g) {
        double x = static_cast<double>(g) / grid + kPhaseOffset;
        sum += iterate_complex(c, x, n).log_op_norm();
    }
    return sum / (static_cast<double>(n) * grid);
}

double rotation_number(const SchrodingerCocycle& c, long long n, double x0) {
    if (!c.real_energy()) throw std::domain_error("rotation_number: real E only");
    if (n < 1000) throw std::invalid_argument("rotation_number: n >= 1000");
    // orbit vector (u_s, u_{s-1}) from angle 0, i.e. (1, 0)
    double u = 1.0, up = 0.0;  // u_s, u_{s-1}
    long long crossings = 0;
    double E = c.E.real();
    for (long long s = 0; s < n; ++s) {
        double v = 2.0 * c.lambda * std::cos(kTwoPi * (x0 + static_cast<double>(s) * c.alpha));
        double unext = (E - v) * u - up;
        if ((unext < 0 && u > 0) || (unext > 0 && u < 0) || u == 0.0) ++crossings;
        up = u;
        u = unext;
        if ((s + 1) % kRescaleEvery == 0) {
            double scale = std::max(std::abs(u), std::abs(up));
            if (scale > 0) { u /= scale; up /= scale; }
        }
    }
    return static_cast<double>(crossings) / (2.0 * static_cast<double>(n));
}

OrbitStats boundedness_probe(const SchrodingerCocycle& c, long long n_max, int grid) {
    if (grid < 1) throw std::invalid_argument("boundedness_probe: grid >= 1");
    OrbitStats st;
    st.n = n_max;
    st.phases = grid;

    // dyadic checkpoints for the growth fits
    std::vector<long long> marks;
    for (long long m = std::max<long long>(1, n_max / 64); m <= n_max; m *= 2) marks.push_back(m);
    if (marks.empty() || marks.back() != n_max) marks.push_back(std::max<long long>(n_max, 1));
    std::vector<double> sup_at(marks.size(), std::log(std::sqrt(2.0)));

    double sup_log = 0.5 * std::log(2.0);  // identity has HS norm sqrt(2)
    for (int g = 0; g < grid; ++g) {
        double x = static_cast<double>(g) / grid + kPhaseOffset;
        ScaledMat2 acc;
        std::size_t mi = 0;
        for (long long s = 0; s < n_max; ++s) {
            acc.apply_left(step_matrix(c, x + static_cast<double>(s) * c.alpha));
            if ((s + 1) % kRescaleEvery == 0) acc.rescale();
            double lg = acc.log_hs_norm();
            sup_log = std::max(sup_log, lg);
            while (mi < marks.size() && s + 1 == marks[mi]) {
                sup_at[mi] = std::max(sup_at[mi], lg);
                ++mi;
            }
        }
    }
    // running sup over checkpoints
    for (std::size_t i = 1; i < sup_at.size(); ++i)
        sup_at[i] = std::max(sup_at[i], sup_at[i - 1]);

    st.sup_log_norm = sup_log;
    st.sup_norm = std::exp(sup_log);
    if (n_max > 0) {
        st.lyap = sup_log / static_cast<double>(n_max);
        st.rotation = c.real_energy() ? rotation_number(c, std::max<long long>(n_max, 1000),
                                                        kPhaseOffset)
                                      : 0.0;
        if (marks.size() >= 2) {
            std::size_t i0 = marks.size() / 2, i1 = marks.size() - 1;
            double dlog_s = std::log(static_cast<double>(marks[i1])) -
                            std::log(static_cast<double>(marks[i0]));
            double dsup = sup_at[i1] - sup_at[i0];
            st.poly_fit_slope = dlog_s > 0 ? dsup / dlog_s : 0.0;
            st.loglin_fit_slope = dsup / static_cast<double>(marks[i1] - marks[i0]);
        }
    }
    return st;
}

bool uniform_hyperbolicity_test(const SchrodingerCocycle& c, long long n, int grid,
                                double tol) {
    if (!c.real_energy()) throw std::domain_error("uniform_hyperbolicity_test: real E only");
    if (grid < 2) throw std::invalid_argument("uniform_hyperbolicity_test: grid >= 2");

    std::vector<double> angle(grid);
    for (int g = 0; g < grid; ++g) {
        double x = static_cast<double>(g) / grid + kPhaseOffset;
        ScaledMat2 acc = iterate(c, x, n);
        // the value is unimodular, so sigma_-(value) = 1/sigma_+(value) and
        // the singular gap is e^{2 log sigma_+}, safe in log domain
        double log_gap = 2.0 * acc.log_op_norm();
        if (log_gap <= static_cast<double>(n) * tol) return false;
        // most contracted input direction: eigenvector of A^T A for the
        // smaller eigenvalue
        const Mat2& m = acc.m;
        double g11 = m.a * m.a + m.c * m.c;
        double g12 = m.a * m.b + m.c * m.d;
        double g22 = m.b * m.b + m.d * m.d;
        double half_tr = 0.5 * (g11 + g22);
        double disc = std::sqrt(std::max(0.0, 0.25 * (g11 - g22) * (g11 - g22) + g12 * g12));
        double lam_min = half_tr - disc;
        double vx, vy;
        if (std::abs(g12) > 1e-300) { vx = g12; vy = lam_min - g11; }
        else if (g11 <= g22) { vx = 1; vy = 0; }
        else { vx = 0; vy = 1; }
        angle[g] = std::atan2(vy, vx);  // projective direction, compare mod pi
    }
    constexpr double kPi = 3.14159265358979323846;
    for (int g = 0; g < grid; ++g) {
        double d = std::abs(angle[g] - angle[(g + 1) % grid]);
        d = std::fmod(d, kPi);
        d = std::min(d, kPi - d);
        if (d > kPi / 8) return false;
    }
    return true;
}

std::string sweep_csv_header() { return "lambda,alpha,E_re,E_im,n,lyap,rotation,sup_norm"; }

std::string sweep_csv_row(const SweepRow& r) {
    std::ostringstream os;
    os << fmt_double(r.lambda) << ',' << fmt_double(r.alpha) << ',' << fmt_double(r.E_re)
       << ',' << fmt_double(r.E_im) << ',' << r.n << ',' << fmt_double(r.lyap) << ','
       << fmt_double(r.rotation) << ',' << fmt_double(r.sup_norm);
    return os.str();
}

}  // namespace amo
