#include "amo/contfrac.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace amo {

ContinuedFraction expand(double alpha, int max_terms, long long q_cap) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("expand: alpha must lie in (0,1)");
    if (max_terms < 1) throw std::invalid_argument("expand: max_terms >= 1");

    ContinuedFraction cf;
    cf.alpha = alpha;

    // seeds p_0=0, p_{-1}=1 and q_0=1, q_{-1}=0 for alpha = [0; a1, a2, ...],
    // so the first convergent is 1/a1
    long long pm1 = 0, pm2 = 1;
    long long qm1 = 1, qm2 = 0;
    double x = alpha;
    for (int k = 0; k < max_terms; ++k) {
        double inv = 1.0 / x;
        double af = std::floor(inv);
        if (af >= 9e18) { cf.exact_rational = true; break; }
        long long a = static_cast<long long>(af);
        double rem = inv - af;

        long long pk, qk, tmp;
        if (__builtin_mul_overflow(a, pm1, &tmp) || __builtin_add_overflow(tmp, pm2, &pk) ||
            __builtin_mul_overflow(a, qm1, &tmp) || __builtin_add_overflow(tmp, qm2, &qk)) {
            cf.exact_rational = true;
            break;
        }
        if (qk > q_cap) break;
        cf.quotients.push_back(a);
        cf.convergents.emplace_back(pk, qk);
        pm2 = pm1; pm1 = pk;
        qm2 = qm1; qm1 = qk;

        if (rem < 1e-15) { cf.exact_rational = true; break; }
        x = rem;
    }
    return cf;
}

ContinuedFraction from_quotients(const std::vector<long long>& quotients) {
    if (quotients.empty()) throw std::invalid_argument("from_quotients: empty");
    ContinuedFraction cf;
    long long pm1 = 0, pm2 = 1, qm1 = 1, qm2 = 0;
    for (long long a : quotients) {
        if (a < 1) throw std::invalid_argument("from_quotients: quotients must be >= 1");
        long long pk, qk, tmp;
        if (__builtin_mul_overflow(a, pm1, &tmp) || __builtin_add_overflow(tmp, pm2, &pk) ||
            __builtin_mul_overflow(a, qm1, &tmp) || __builtin_add_overflow(tmp, qm2, &qk))
            throw std::invalid_argument("from_quotients: q overflows 64-bit");
        cf.quotients.push_back(a);
        cf.convergents.emplace_back(pk, qk);
        pm2 = pm1; pm1 = pk;
        qm2 = qm1; qm1 = qk;
    }
    cf.alpha = static_cast<double>(pm1) / static_cast<double>(qm1);
    return cf;
}

BetaEstimate beta_estimate(const ContinuedFraction& cf, int tail) {
    if (tail < 1) throw std::invalid_argument("beta_estimate: tail >= 1");
    // tail >= depth-1 means "use every ratio"; otherwise require enough depth
    // for the requested window
    if (cf.depth() < 3)
        throw std::invalid_argument("beta_estimate: need at least 3 convergents");
    if (static_cast<std::size_t>(tail) + 2 > cf.depth() &&
        static_cast<std::size_t>(tail) < cf.depth() - 1)
        throw std::invalid_argument("beta_estimate: need at least tail+2 convergents");
    BetaEstimate be;
    be.depth = static_cast<int>(cf.depth());
    for (std::size_t k = 0; k + 1 < cf.depth(); ++k)
        be.ratios.push_back(std::log(static_cast<double>(cf.q(k + 1))) /
                            static_cast<double>(cf.q(k)));
    be.beta_hat = 0;
    std::size_t from = be.ratios.size() > static_cast<std::size_t>(tail)
                           ? be.ratios.size() - static_cast<std::size_t>(tail)
                           : 0;
    for (std::size_t k = from; k < be.ratios.size(); ++k)
        be.beta_hat = std::max(be.beta_hat, be.ratios[k]);
    return be;
}

double torus_norm(double x) {
    double r = x - std::round(x);
    return std::abs(r);
}

ResonanceReport find_resonances(double theta, double alpha, double epsilon0, long long K) {
    if (!(epsilon0 > 0)) throw std::domain_error("find_resonances: epsilon0 > 0");
    if (K < 1) throw std::invalid_argument("find_resonances: K >= 1");

    ResonanceReport rep;
    rep.theta = theta;
    rep.alpha = alpha;
    rep.epsilon0 = epsilon0;
    rep.search_bound = K;

    std::vector<double> norm_pos(K + 1), norm_neg(K + 1);
    for (long long k = 0; k <= K; ++k) {
        norm_pos[k] = torus_norm(2.0 * theta - static_cast<double>(k) * alpha);
        norm_neg[k] = torus_norm(2.0 * theta + static_cast<double>(k) * alpha);
    }

    // min over |j| <= |k| includes both signs at level |k| itself
    rep.resonances.push_back(0);
    double running_min = norm_pos[0];
    for (long long k = 1; k <= K; ++k) {
        double level_min = std::min({running_min, norm_neg[k], norm_pos[k]});
        double bound = std::exp(-static_cast<double>(k) * epsilon0);
        // order within equal |k|: negative index first
        if (norm_neg[k] <= bound && norm_neg[k] <= level_min) {
            rep.resonances.push_back(-k);
            if (norm_pos[k] == norm_neg[k] || running_min == norm_neg[k])
                rep.ties.push_back(-k);
        }
        if (norm_pos[k] <= bound && norm_pos[k] <= level_min) {
            rep.resonances.push_back(k);
            if (norm_neg[k] == norm_pos[k] || running_min == norm_pos[k])
                rep.ties.push_back(k);
        }
        running_min = level_min;
    }
    return rep;
}

std::string ContinuedFraction::to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["quotients"] = quotients;
    auto conv = nlohmann::json::array();
    for (const auto& [p, q] : convergents) conv.push_back({p, q});
    j["convergents"] = conv;
    j["exact_rational"] = exact_rational;
    return j.dump(2);
}

std::string ResonanceReport::to_json() const {
    nlohmann::json j;
    j["theta"] = theta;
    j["alpha"] = alpha;
    j["epsilon0"] = epsilon0;
    j["search_bound"] = search_bound;
    j["resonances"] = resonances;
    j["ties"] = ties;
    return j.dump(2);
}

}  // namespace amo
