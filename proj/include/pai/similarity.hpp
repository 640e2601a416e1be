#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "pai/matrix.hpp"
#include "pai/stats.hpp"
#include "pai/types.hpp"
#include "pai/variants.hpp"

namespace pai {

// Affinity index: the share of the target's international co-authorship links
// held by each partner, n_{target,j} / sum_{k != target} n_{target,k}.
// Returned aligned to the matrix labels with the target's own slot missing;
// the defined entries sum to 1.
inline std::vector<double> afi(const CoauthMatrix& matrix, std::string_view target) {
    auto t = matrix.index_of(target);
    if (!t) throw ConfigError("unknown country '" + std::string(target) + "'");
    double margin = 0.0;
    for (std::size_t j = 0; j < matrix.size(); ++j)
        if (j != *t) margin += matrix.at(*t, j);
    if (margin == 0.0)
        throw DataError("afi: country '" + std::string(target) +
                        "' has no international co-authorship links");
    std::vector<double> out(matrix.size(), missing());
    for (std::size_t j = 0; j < matrix.size(); ++j)
        if (j != *t) out[j] = matrix.at(*t, j) / margin;
    return out;
}

// Salton-Ochiai similarity: n_ij / sqrt(n_i * n_j) with n_i the country's
// total paper count. Self-similarity is undefined, so the diagonal is missing.
inline VariantResult salton_ochiai(const StatsTable& stats, const CoauthMatrix& matrix) {
    VariantResult r;
    r.method = Method::salton;
    r.labels = matrix.labels;
    r.values.assign(matrix.size() * matrix.size(), missing());
    r.diagonal_strategy = matrix.diagonal_strategy;
    const std::size_t n = matrix.size();
    std::vector<double> totals(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = stats.find(matrix.labels[i]);
        if (it == stats.end())
            throw ConfigError("no stats entry for country '" + matrix.labels[i] + "'");
        totals[i] = static_cast<double>(it->second.total_papers);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || totals[i] == 0 || totals[j] == 0) continue;
            r.at(i, j) = matrix.at(i, j) / std::sqrt(totals[i] * totals[j]);
        }
    }
    return r;
}

}  // namespace pai
