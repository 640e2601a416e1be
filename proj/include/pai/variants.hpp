#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pai/matrix.hpp"
#include "pai/stats.hpp"
#include "pai/types.hpp"

namespace pai {

// A PAI (or NPAI) matrix. Missing cells mark pairs where a defining
// denominator is zero; they are never folded into 0 or -1.
struct VariantResult {
    Method method = Method::m2;
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major, missing() for undefined cells
    DiagonalStrategy diagonal_strategy = DiagonalStrategy::zero;
    NormalizeMode normalized = NormalizeMode::none;

    std::size_t size() const { return labels.size(); }
    double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }

    std::optional<std::size_t> index_of(std::string_view code) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), code);
        if (it == labels.end() || *it != code) return std::nullopt;
        return static_cast<std::size_t>(it - labels.begin());
    }
};

namespace detail {

inline VariantResult make_result(Method method, const CoauthMatrix& m) {
    VariantResult r;
    r.method = method;
    r.labels = m.labels;
    r.values.assign(m.size() * m.size(), missing());
    r.diagonal_strategy = m.diagonal_strategy;
    return r;
}

}  // namespace detail

// M1: non-overlapping. n_all * n_ij / (n_i * n_j) with paper-level counts:
// n_i is the country's internationally collaborative paper count and n_all
// the global one. Diagonal fixed at zero; countries with n_i = 0 are missing.
inline VariantResult pai_m1(const CoauthMatrix& matrix, const StatsTable& stats) {
    if (matrix.diagonal_strategy != DiagonalStrategy::zero)
        throw ConfigError("m1 needs the zero-diagonal matrix");
    VariantResult r = detail::make_result(Method::m1, matrix);
    const std::size_t n = matrix.size();
    std::vector<double> intl(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = stats.find(matrix.labels[i]);
        if (it == stats.end())
            throw ConfigError("no stats entry for country '" + matrix.labels[i] + "'");
        intl[i] = static_cast<double>(it->second.intl_papers);
    }
    const double n_all = static_cast<double>(matrix.n_all_papers);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (intl[i] == 0 || intl[j] == 0) continue;  // stays missing
            r.at(i, j) = i == j ? 0.0 : n_all * matrix.at(i, j) / (intl[i] * intl[j]);
        }
    }
    return r;
}

// M2-M6: overlapping. total * n_ij / (margin(i) * margin(j)) over every cell
// including the diagonal; the matrix's diagonal strategy decides which method
// id the result carries. Zero-margin rows and columns are missing.
inline VariantResult pai_overlapping(const CoauthMatrix& matrix,
                                     std::vector<std::string>* warnings = nullptr) {
    auto method = overlapping_method_for(matrix.diagonal_strategy);
    if (!method) throw ConfigError("matrix has no overlapping method binding");
    VariantResult r = detail::make_result(*method, matrix);
    const std::size_t n = matrix.size();
    const std::vector<double> margins = matrix.margins();
    const double total = matrix.total();
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (margins[i] == 0 || margins[j] == 0) continue;
            r.at(i, j) = total * matrix.at(i, j) / (margins[i] * margins[j]);
            any = true;
        }
    }
    if (!any && warnings)
        warnings->push_back(std::string(to_string(*method)) +
                            ": matrix has no links, every cell is missing");
    return r;
}

// M7: self-exclusive. n_ij * (total - margin(i)) / (margin(i) * margin(j)) on
// the zero-diagonal matrix. Asymmetric: M7(i,j)/M7(j,i) =
// (total - margin(i))/(total - margin(j)).
inline VariantResult pai_m7(const CoauthMatrix& matrix) {
    if (matrix.diagonal_strategy != DiagonalStrategy::zero)
        throw ConfigError("m7 needs the zero-diagonal matrix");
    VariantResult r = detail::make_result(Method::m7, matrix);
    const std::size_t n = matrix.size();
    const std::vector<double> margins = matrix.margins();
    const double total = matrix.total();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (margins[i] == 0 || margins[j] == 0) continue;
            r.at(i, j) = matrix.at(i, j) * (total - margins[i]) / (margins[i] * margins[j]);
        }
    }
    return r;
}

// NPAI. power: (p^2 - 1)/(p^2 + 1); linear: (p - 1)/(p + 1). Both map 1 to 0
// and 0 to -1 and keep values in [-1, 1). Missing stays missing. M7 is
// conventionally left unnormalized; normalizing it works but is flagged.
inline VariantResult normalize(const VariantResult& pai, NormalizeMode mode,
                               std::vector<std::string>* warnings = nullptr) {
    if (pai.normalized != NormalizeMode::none)
        throw ConfigError("result is already normalized");
    if (mode == NormalizeMode::none) return pai;
    if (pai.method == Method::m7 && warnings)
        warnings->push_back("m7 is conventionally reported unnormalized; normalizing anyway");
    VariantResult r = pai;
    r.normalized = mode;
    for (double& v : r.values) {
        if (is_missing(v)) continue;
        v = mode == NormalizeMode::power ? (v * v - 1.0) / (v * v + 1.0)
                                         : (v - 1.0) / (v + 1.0);
    }
    return r;
}

}  // namespace pai
