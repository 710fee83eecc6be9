#ifndef RESBOUND_INTERVAL_UNION_HPP
#define RESBOUND_INTERVAL_UNION_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace resbound {

/**
 * A finite union of closed, pairwise disjoint real intervals
 * [a_1,a_2] u [a_3,a_4] u ... u [a_{2l-1},a_{2l}] with a_1 < a_2 < ... < a_{2l}.
 *
 * Instances are only produced by make_interval_union(), which sorts,
 * validates and merges touching or overlapping input intervals.
 */
class IntervalUnion {
public:
    struct Interval {
        double lo;
        double hi;
    };

    IntervalUnion() = default;

    std::span<const double> endpoints() const { return endpoints_; }
    int ell() const { return static_cast<int>(endpoints_.size() / 2); }

    Interval interval(int j) const { return {endpoints_[2 * j], endpoints_[2 * j + 1]}; }

    std::vector<Interval> intervals() const {
        std::vector<Interval> out;
        for (int j = 0; j < ell(); ++j) out.push_back(interval(j));
        return out;
    }

    /// Open gaps (a_{2j}, a_{2j+1}) between consecutive intervals.
    std::vector<Interval> gaps() const {
        std::vector<Interval> out;
        for (int j = 0; j + 1 < ell(); ++j) out.push_back({endpoints_[2 * j + 1], endpoints_[2 * j + 2]});
        return out;
    }

    double hull_lo() const { return endpoints_.front(); }
    double hull_hi() const { return endpoints_.back(); }
    double hull_width() const { return hull_hi() - hull_lo(); }

    bool contains(double x) const {
        for (int j = 0; j < ell(); ++j) {
            if (x >= endpoints_[2 * j] && x <= endpoints_[2 * j + 1]) return true;
        }
        return false;
    }

    bool hull_contains(double x) const { return x >= hull_lo() && x <= hull_hi(); }

    /// Index of the gap strictly containing x, or -1.
    int gap_index(double x) const {
        for (int j = 0; j + 1 < ell(); ++j) {
            if (x > endpoints_[2 * j + 1] && x < endpoints_[2 * j + 2]) return j;
        }
        return -1;
    }

    double total_length() const {
        double s = 0.0;
        for (int j = 0; j < ell(); ++j) s += endpoints_[2 * j + 1] - endpoints_[2 * j];
        return s;
    }

    /// The image of S under x -> c*x, c > 0.
    IntervalUnion scaled(double c) const {
        if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("scale factor must be positive and finite");
        IntervalUnion out = *this;
        for (auto& a : out.endpoints_) a *= c;
        return out;
    }

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    explicit IntervalUnion(std::vector<double> endpoints) : endpoints_(std::move(endpoints)) {}
    friend IntervalUnion make_interval_union(std::span<const double> raw);

    std::vector<double> endpoints_;
};

/**
 * Build an IntervalUnion from a flat list of endpoint pairs [lo_1,hi_1,lo_2,hi_2,...].
 * Pairs may come in any order; touching or overlapping intervals are merged.
 */
inline IntervalUnion make_interval_union(std::span<const double> raw) {
    if (raw.empty() || raw.size() % 2 != 0) {
        throw InvalidInput("interval union needs an even, nonzero number of endpoints (got " +
                           std::to_string(raw.size()) + ")");
    }
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < raw.size(); i += 2) {
        const double lo = raw[i];
        const double hi = raw[i + 1];
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidInput("interval endpoints must be finite");
        if (lo == hi) throw InvalidInput("degenerate interval [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        if (lo > hi) throw InvalidInput("interval endpoints out of order");
        pairs.emplace_back(lo, hi);
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<double> merged;
    double cur_lo = pairs.front().first;
    double cur_hi = pairs.front().second;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].first <= cur_hi) {
            cur_hi = std::max(cur_hi, pairs[i].second);
        } else {
            merged.push_back(cur_lo);
            merged.push_back(cur_hi);
            cur_lo = pairs[i].first;
            cur_hi = pairs[i].second;
        }
    }
    merged.push_back(cur_lo);
    merged.push_back(cur_hi);
    return IntervalUnion(std::move(merged));
}

inline IntervalUnion make_interval_union(std::initializer_list<double> raw) {
    return make_interval_union(std::span<const double>(raw.begin(), raw.size()));
}

inline bool contains(const IntervalUnion& s, double x) { return s.contains(x); }

}

#endif
