#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pai/types.hpp"

namespace pai {

// A correlation that could not be computed is undefined with a reason, which
// is different from data that was excluded before the computation.
struct CorrResult {
    std::optional<double> value;
    std::string reason;  // set iff !value
    std::size_t n_used = 0;

    bool defined() const { return value.has_value(); }
};

// Two aligned sequences after exclusion; every dropped label carries a reason.
struct PairedVector {
    std::vector<std::string> labels;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::pair<std::string, std::string>> exclusion_log;

    std::size_t size() const { return labels.size(); }
};

// Average (fractional) ranks, 1-based; ties share the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

namespace detail {

inline CorrResult pearson_raw(std::span<const double> x, std::span<const double> y) {
    CorrResult r;
    r.n_used = x.size();
    if (x.size() < 3) {
        r.reason = "insufficient overlap";
        return r;
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) { mx += x[k]; my += y[k]; }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx, dy = y[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) {
        r.reason = "zero variance";
        return r;
    }
    r.value = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return r;
}

}  // namespace detail

inline CorrResult pearson(const PairedVector& v) { return detail::pearson_raw(v.x, v.y); }

// Pearson of the average-rank vectors.
inline CorrResult spearman(const PairedVector& v) {
    if (v.x.size() < 3) {
        CorrResult r;
        r.n_used = v.x.size();
        r.reason = "insufficient overlap";
        return r;
    }
    return detail::pearson_raw(average_ranks(v.x), average_ranks(v.y));
}

}  // namespace pai
