#pragma once

#include <cmath>

#include "amo/contfrac.hpp"
#include "amo/halfplane.hpp"
#include "amo/mat2.hpp"
#include "amo/rng.hpp"

namespace amo::testing {

// Random unimodular matrix with entries drawn in [-span, span], rejected
// until |det| >= 0.5 and renormalized to det 1.
inline Mat2 random_unimodular(Rng& rng, double span = 3.0) {
    for (;;) {
        Mat2 m{rng.uniform(-span, span), rng.uniform(-span, span),
               rng.uniform(-span, span), rng.uniform(-span, span)};
        double dt = m.det();
        if (std::abs(dt) < 0.5) continue;
        if (dt < 0) { m.b = -m.b; m.d = -m.d; dt = -dt; }  // flip a column
        double s = 1.0 / std::sqrt(dt);
        return {m.a * s, m.b * s, m.c * s, m.d * s};
    }
}

inline Mat2 random_elliptic(Rng& rng, double span = 3.0) {
    for (;;) {
        Mat2 m = random_unimodular(rng, span);
        if (std::abs(m.trace()) < 1.9 && std::abs(m.c) > 1e-6) return m;
    }
}

inline HPoint random_hpoint(Rng& rng, double re_span = 2.0, double im_lo = 0.15,
                            double im_hi = 3.0) {
    return HPoint(rng.uniform(-re_span, re_span), rng.uniform(im_lo, im_hi));
}

inline double golden_mean() {
    return from_quotients(std::vector<long long>(30, 1)).alpha;
}

inline double silver_mean() {
    return from_quotients(std::vector<long long>(30, 2)).alpha;
}

}  // namespace amo::testing
