#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace amo {

struct Interval {
    double lo, hi;

    Interval(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw std::domain_error("Interval: lo > hi");
    }

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

// Union of intervals, merged into maximal disjoint pieces (touching within
// merge_tol coalesce).
inline std::vector<Interval> merge_union(std::vector<Interval> v, double merge_tol = 0.0) {
    if (v.empty()) return v;
    std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) {
        return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    std::vector<Interval> out;
    out.push_back(v.front());
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].lo <= out.back().hi + merge_tol)
            out.back().hi = std::max(out.back().hi, v[i].hi);
        else
            out.push_back(v[i]);
    }
    return out;
}

inline double total_length(const std::vector<Interval>& v) {
    double s = 0;
    for (const auto& iv : v) s += iv.length();
    return s;
}

// Lebesgue measure of (union of a) minus (union of b); both merged first.
inline double difference_measure(std::vector<Interval> a, std::vector<Interval> b) {
    a = merge_union(std::move(a));
    b = merge_union(std::move(b));
    double kept = 0;
    for (const auto& ia : a) {
        double cursor = ia.lo;
        for (const auto& ib : b) {
            if (ib.hi <= cursor) continue;
            if (ib.lo >= ia.hi) break;
            if (ib.lo > cursor) kept += ib.lo - cursor;
            cursor = std::max(cursor, std::min(ib.hi, ia.hi));
            if (cursor >= ia.hi) break;
        }
        if (cursor < ia.hi) kept += ia.hi - cursor;
    }
    return kept;
}

inline bool covers(const std::vector<Interval>& outer, const Interval& inner, double tol = 0.0) {
    for (const auto& o : outer)
        if (o.lo - tol <= inner.lo && inner.hi <= o.hi + tol) return true;
    return false;
}

}  // namespace amo
