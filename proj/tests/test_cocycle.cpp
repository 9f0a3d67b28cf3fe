#include <doctest.h>

#include <cmath>

#include "amo/cocycle.hpp"
#include "amo/periodic.hpp"
#include "amo/rng.hpp"

#include "support.hpp"

using namespace amo;
using amo::testing::golden_mean;

TEST_CASE("step matrix values") {
    SchrodingerCocycle c(0.5, golden_mean(), {0.0, 0.0});
    Mat2 s = step_matrix(c, 0.0);
    CHECK(s.a == doctest::Approx(-1.0));  // E - 2*lambda = -1
    CHECK(s.b == doctest::Approx(-1.0));
    CHECK(s.c == doctest::Approx(1.0));
    CHECK(s.d == doctest::Approx(0.0));

    SchrodingerCocycle c2(0.7, 0.3, {1.3, 0.0});
    Mat2 s2 = step_matrix(c2, 0.25);  // cos term vanishes
    CHECK(s2.a == doctest::Approx(1.3));

    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        SchrodingerCocycle cr(rng.uniform(0.1, 2.0), rng.uniform(), {rng.uniform(-3, 3), 0.0});
        CHECK(step_matrix(cr, rng.uniform()).det() == doctest::Approx(1.0));
    }
}

TEST_CASE("iterate: identity, one step, cocycle law") {
    SchrodingerCocycle c(0.5, golden_mean(), {0.3, 0.0});
    auto a0 = iterate(c, 0.1, 0);
    CHECK(a0.log_scale == 0.0);
    CHECK(hs_norm_sq(a0.m) == doctest::Approx(2.0));

    auto a1 = iterate(c, 0.1, 1);
    Mat2 s = step_matrix(c, 0.1);
    CHECK(a1.m.a == doctest::Approx(s.a));
    CHECK(a1.m.b == doctest::Approx(s.b));

    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        SchrodingerCocycle cr(rng.uniform(0.2, 1.5), rng.uniform(), {rng.uniform(-2, 2), 0.0});
        double x = rng.uniform();
        long long m = 50, n = 50;
        auto whole = iterate(cr, x, m + n);
        auto right = iterate(cr, x, n);
        auto left = iterate(cr, x + static_cast<double>(n) * cr.alpha, m);
        // compose in log-scale form
        Mat2 comp = mul_nodet(left.m, right.m);
        double comp_log = left.log_scale + right.log_scale;
        double whole_norm = whole.log_op_norm();
        double scale = std::exp(whole.log_scale - comp_log);
        CHECK(std::abs(whole.m.a * scale - comp.a) * std::exp(comp_log) <=
              1e-8 * std::exp(whole_norm));
        CHECK(std::abs(whole.m.d * scale - comp.d) * std::exp(comp_log) <=
              1e-8 * std::exp(whole_norm));
    }
}

TEST_CASE("lyapunov: supercritical ln lambda, hyperbolic far field") {
    double g = golden_mean();
    // E = 0 lies in the middle band of the odd-q approximants, so it is in
    // the spectrum up to the approximation error; Theorem-L value ln 2
    SchrodingerCocycle c(2.0, g, {0.0, 0.0});
    double L = lyapunov(c, 20000, 32);
    CHECK(L == doctest::Approx(std::log(2.0)).epsilon(0.02));

    // far outside the spectrum: L(E) ~ log of the spectral-radius growth
    SchrodingerCocycle far(0.5, g, {5.0, 0.0});
    double Lfar = lyapunov(far, 5000, 32);
    CHECK(Lfar > 0.5);
    OrbitStats st = boundedness_probe(far, 4000, 16);
    CHECK(std::abs(st.loglin_fit_slope - Lfar) < 0.05);

    // subcritical mid-band energy: exponent 0
    auto bs = bands(0.5, 34, 55, 0.12);
    double Emid = bs.bands[27].range.midpoint();
    SchrodingerCocycle sub(0.5, g, {Emid, 0.0});
    CHECK(lyapunov(sub, 50000, 32) == doctest::Approx(0.0).epsilon(1.0).scale(0.03));
}

TEST_CASE("lyapunov nonnegative and conjugacy-stable") {
    Rng rng(43);
    for (int t = 0; t < 5; ++t) {
        SchrodingerCocycle c(rng.uniform(0.2, 2.5), rng.uniform(), {rng.uniform(-3, 3), 0.0});
        double L = lyapunov(c, 2000, 32);
        CHECK(L >= -1e-3);
    }
    // conjugating by constant B shifts the finite-n estimate by at most
    // (2/n) ln ||B||
    double g = golden_mean();
    long long n = 4000;
    SchrodingerCocycle c(0.5, g, {0.8, 0.0});
    double L = lyapunov(c, n, 32);
    // manual conjugated estimate: B A B^{-1} products
    Mat2 B = Mat2::diag(2.0, 0.5);
    Mat2 B_inv = B.inverse();
    double sum = 0;
    for (int gidx = 0; gidx < 32; ++gidx) {
        double x = gidx / 32.0 + kPhaseOffset;
        ScaledMat2 acc;
        for (long long s = 0; s < n; ++s) {
            acc.apply_left(B * step_matrix(c, x + s * g) * B_inv);
            if ((s + 1) % 32 == 0) acc.rescale();
        }
        sum += acc.log_op_norm();
    }
    double Lconj = sum / (static_cast<double>(n) * 32);
    CHECK(std::abs(Lconj - L) <= 2.0 * std::log(2.0) / static_cast<double>(n) + 5e-4);
}

TEST_CASE("lyapunov at complex energy: delta/10 bound and continuity") {
    double g = golden_mean();
    auto bs = bands(0.5, 34, 55, 0.12);
    double Emid = bs.bands[27].range.midpoint();

    SchrodingerCocycle c(0.5, g, {Emid, 0.1});
    double L = lyapunov_complex(c, 20000, 32);
    CHECK(L >= 0.01 - 0.005);

    SchrodingerCocycle c0(0.5, g, {Emid, 0.0});
    CHECK(lyapunov_complex(c0, 2000, 32) == doctest::Approx(lyapunov(c0, 2000, 32)));
}

TEST_CASE("rotation number: boundary values and IDS link") {
    double g = golden_mean();
    double lam = 0.5;
    long long n = 20000;
    // below the spectrum: rho = 1/2; above: rho = 0
    SchrodingerCocycle below(lam, g, {-2.0 - 2.0 * lam - 1.0, 0.0});
    CHECK(rotation_number(below, n, 0.2) == doctest::Approx(0.5).epsilon(2.0 / n * 4));
    SchrodingerCocycle above(lam, g, {2.0 + 2.0 * lam + 1.0, 0.0});
    CHECK(rotation_number(above, n, 0.2) == doctest::Approx(0.0).scale(1.0).epsilon(2.0 / n * 4));

    // rational alpha: 1 - 2 rho matches the periodic IDS
    auto bs = bands(lam, 1, 3, 0.37);
    Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        int band = static_cast<int>(rng.uniform_int(0, 2));
        double E = bs.bands[band].range.lo +
                   bs.bands[band].range.length() * rng.uniform(0.1, 0.9);
        SchrodingerCocycle c(lam, 1.0 / 3.0, {E, 0.0});
        double rho = rotation_number(c, 200000, 0.37);
        CHECK(1.0 - 2.0 * rho == doctest::Approx(ids_periodic(bs, E)).epsilon(0.0).scale(1.0).epsilon(2e-3));
    }

    // monotone nonincreasing in E up to estimator noise
    SchrodingerCocycle probe(lam, g, {0.0, 0.0});
    double prev = 1.0;
    for (int i = 0; i < 100; ++i) {
        double E = -3.2 + 6.4 * i / 99.0;
        SchrodingerCocycle c(lam, g, {E, 0.0});
        double rho = rotation_number(c, 4000, 0.2);
        CHECK(rho <= prev + 2.0 / 4000.0 + 1e-12);
        prev = rho;
    }
}

TEST_CASE("boundedness probe") {
    double g = golden_mean();
    SchrodingerCocycle c(0.5, g, {0.5, 0.0});
    OrbitStats none = boundedness_probe(c, 0, 4);
    CHECK(none.sup_norm == doctest::Approx(std::sqrt(2.0)));

    // in a subcritical band of a nearby rational: subpolynomial growth
    auto bs = bands(0.5, 34, 55, 0.12);
    double Emid = bs.bands[30].range.midpoint();
    SchrodingerCocycle sub(0.5, g, {Emid, 0.0});
    OrbitStats st = boundedness_probe(sub, 10000, 16);
    CHECK(st.poly_fit_slope < 0.5);
    CHECK(st.sup_log_norm >= 0.5 * std::log(2.0) - 1e-12);

    // outside the spectrum: exponential growth at rate ~ L
    SchrodingerCocycle hyp(0.5, g, {4.0, 0.0});
    OrbitStats sth = boundedness_probe(hyp, 3000, 8);
    double L = lyapunov(hyp, 3000, 32);
    CHECK(std::abs(sth.loglin_fit_slope - L) <= 0.05);
}

TEST_CASE("uniform hyperbolicity probe") {
    double g = golden_mean();
    CHECK(uniform_hyperbolicity_test(SchrodingerCocycle(0.5, g, {10.0, 0.0}), 60, 32, 0.1));
    // inside a band of a close rational the cocycle is not u.h.
    auto bs = bands(0.5, 1, 2, 0.0);
    double Emid = bs.bands[1].range.midpoint();
    SchrodingerCocycle nearby(0.5, 0.5 + 1e-10, {Emid, 0.0});
    CHECK(!uniform_hyperbolicity_test(nearby, 400, 32, 0.05));
    // insufficient expansion horizon: tol above the one-step growth
    CHECK(!uniform_hyperbolicity_test(SchrodingerCocycle(0.5, g, {10.0, 0.0}), 1, 32, 6.0));
}

TEST_CASE("exponent duality across lambda <-> 1/lambda (rational spectra scaling)") {
    // spectrum_union(lambda) = lambda * spectrum_union(1/lambda)
    auto u_half = spectrum_union(0.5, 3, 8, 16);
    auto u_two = spectrum_union(2.0, 3, 8, 16);
    REQUIRE(u_half.size() == u_two.size());
    for (std::size_t i = 0; i < u_half.size(); ++i) {
        CHECK(u_half[i].lo == doctest::Approx(0.5 * u_two[i].lo).epsilon(1e-8));
        CHECK(u_half[i].hi == doctest::Approx(0.5 * u_two[i].hi).epsilon(1e-8));
    }
}

TEST_CASE("sweep csv schema") {
    CHECK(sweep_csv_header() == "lambda,alpha,E_re,E_im,n,lyap,rotation,sup_norm");
    SweepRow r{0.5, 0.25, 1.0, 0.0, 100, 0.1, 0.2, 1.5};
    auto row = sweep_csv_row(r);
    CHECK(row == "0.5,0.25,1,0,100,0.1,0.2,1.5");
}
