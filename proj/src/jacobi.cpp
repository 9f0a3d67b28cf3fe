#include "amo/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amo {

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    if (n < 1 || a.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("jacobi_eigenvalues: bad dimensions");

    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    double frob = 0;
    for (double x : a) frob += x * x;
    double stop = 1e-28 * std::max(frob, 1e-300);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int i = 0; i < n - 1; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < stop) break;
        double tresh = sweep < 3 ? 0.1 * off / (n * n) : 0.0;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq * apq <= tresh) continue;
                double h = at(q, q) - at(p, p);
                double t;
                if (std::abs(h) + 100.0 * std::abs(apq) == std::abs(h)) {
                    t = apq / h;
                } else {
                    double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0) t = -t;
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau = s / (1.0 + c);
                double hpq = t * apq;
                at(p, p) -= hpq;
                at(q, q) += hpq;
                at(p, q) = 0.0;
                auto rot = [&](int i, int j, int k, int l) {
                    double g = at(i, j), hh = at(k, l);
                    at(i, j) = g - s * (hh + g * tau);
                    at(k, l) = hh + s * (g - hh * tau);
                };
                for (int j = 0; j < p; ++j) rot(j, p, j, q);
                for (int j = p + 1; j < q; ++j) rot(p, j, j, q);
                for (int j = q + 1; j < n; ++j) rot(p, j, q, j);
            }
        }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace amo
