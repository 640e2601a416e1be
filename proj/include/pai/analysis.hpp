#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pai/correlation.hpp"
#include "pai/matrix.hpp"
#include "pai/similarity.hpp"
#include "pai/stats.hpp"
#include "pai/types.hpp"
#include "pai/variants.hpp"

namespace pai {

// Row mode correlates the target's partner row (the target itself excluded);
// flat mode correlates every ordered off-diagonal cell of the whole matrix.
enum class CompareMode { row, flat };

inline std::optional<CompareMode> parse_compare_mode(std::string_view s) {
    if (s == "row") return CompareMode::row;
    if (s == "flat") return CompareMode::flat;
    return std::nullopt;
}

struct PairCorrelation {
    Method a;
    Method b;
    CorrResult pearson;
    CorrResult spearman;
    std::size_t n_used = 0;
};

struct ComparisonReport {
    std::string target;  // empty in flat mode
    CompareMode mode = CompareMode::row;
    std::vector<PairCorrelation> pairs;
};

namespace detail {

// The -1 exclusion applies to normalized values; for raw values the same
// pairs are the ones with no collaboration at all, PAI = 0.
inline bool excluded_value(const VariantResult& r, double v) {
    return r.normalized != NormalizeMode::none ? v == -1.0 : v == 0.0;
}

inline void align_cell(const VariantResult& X, const VariantResult& Y, double x, double y,
                       const std::string& label, bool apply_minus_one, PairedVector& out) {
    if (is_missing(x) || is_missing(y)) {
        out.exclusion_log.emplace_back(label, is_missing(x) ? "missing in first"
                                                            : "missing in second");
        return;
    }
    if (apply_minus_one) {
        if (excluded_value(X, x)) {
            out.exclusion_log.emplace_back(label, "no collaboration in first");
            return;
        }
        if (excluded_value(Y, y)) {
            out.exclusion_log.emplace_back(label, "no collaboration in second");
            return;
        }
    }
    out.labels.push_back(label);
    out.x.push_back(x);
    out.y.push_back(y);
}

inline PairedVector align_variant_pair(const VariantResult& X, const VariantResult& Y,
                                       std::size_t target, CompareMode mode) {
    // The -1 rule only fires when at least one side is normalized.
    const bool apply_minus_one = X.normalized != NormalizeMode::none ||
                                 Y.normalized != NormalizeMode::none;
    PairedVector v;
    const std::size_t n = X.size();
    if (mode == CompareMode::row) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == target) {
                v.exclusion_log.emplace_back(X.labels[j], "target row");
                continue;
            }
            align_cell(X, Y, X.at(target, j), Y.at(target, j), X.labels[j], apply_minus_one, v);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                align_cell(X, Y, X.at(i, j), Y.at(i, j), X.labels[i] + ":" + X.labels[j],
                           apply_minus_one, v);
            }
    }
    return v;
}

}  // namespace detail

// Pearson and Spearman for every pair of variants over the same aligned index
// set (so swapping the pair leaves both coefficients unchanged). Pairs with
// fewer than 3 usable partners, or constant vectors, come back undefined with
// the reason.
inline ComparisonReport compare_variants(std::string_view target,
                                         std::span<const VariantResult> results,
                                         CompareMode mode = CompareMode::row) {
    if (results.empty()) throw ConfigError("no variant results to compare");
    for (const auto& r : results)
        if (r.labels != results.front().labels)
            throw ConfigError("variant results do not share labels");

    std::size_t t = 0;
    if (mode == CompareMode::row) {
        auto idx = results.front().index_of(target);
        if (!idx) throw ConfigError("unknown country '" + std::string(target) + "'");
        t = *idx;
    }

    ComparisonReport report;
    report.target = mode == CompareMode::row ? std::string(target) : std::string();
    report.mode = mode;
    for (std::size_t a = 0; a < results.size(); ++a) {
        for (std::size_t b = a + 1; b < results.size(); ++b) {
            PairedVector v = detail::align_variant_pair(results[a], results[b], t, mode);
            PairCorrelation pc;
            pc.a = results[a].method;
            pc.b = results[b].method;
            pc.pearson = pearson(v);
            pc.spearman = spearman(v);
            pc.n_used = v.size();
            report.pairs.push_back(std::move(pc));
        }
    }
    return report;
}

struct RankedPartner {
    std::string partner;
    double afi = 0.0;
    double pai = 0.0;  // missing() if the variant has no value for the pair
    std::size_t rank = 0;
};

struct RankedPartnerList {
    std::string target;
    Method variant;
    std::size_t afi_cutoff_n = 0;
    std::vector<RankedPartner> entries;  // sorted by pai descending
};

// Top-n partners by AFI (ties broken lexicographically), re-ranked by the
// variant's PAI descending. Competition ranks: ties share a rank, listing
// order within a tie is lexicographic; partners the variant cannot score sort
// last. n beyond the partner count just uses all partners.
inline RankedPartnerList rank_partners(std::string_view target, const CoauthMatrix& matrix,
                                       const VariantResult& variant, std::size_t n) {
    if (n < 1) throw ConfigError("top-n must be at least 1");
    if (variant.labels != matrix.labels)
        throw ConfigError("variant and matrix labels differ");

    std::vector<double> shares = afi(matrix, target);  // throws on zero margin
    const std::size_t t = *matrix.index_of(target);

    std::vector<RankedPartner> pool;
    for (std::size_t j = 0; j < matrix.size(); ++j) {
        if (j == t) continue;
        RankedPartner p;
        p.partner = matrix.labels[j];
        p.afi = shares[j];
        p.pai = variant.at(t, j);
        pool.push_back(std::move(p));
    }
    std::sort(pool.begin(), pool.end(), [](const RankedPartner& a, const RankedPartner& b) {
        if (a.afi != b.afi) return a.afi > b.afi;
        return a.partner < b.partner;
    });
    if (pool.size() > n) pool.resize(n);

    std::sort(pool.begin(), pool.end(), [](const RankedPartner& a, const RankedPartner& b) {
        const bool am = is_missing(a.pai), bm = is_missing(b.pai);
        if (am != bm) return bm;  // defined values first
        if (!am && a.pai != b.pai) return a.pai > b.pai;
        return a.partner < b.partner;
    });
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const bool tie_with_prev =
            i > 0 && ((is_missing(pool[i].pai) && is_missing(pool[i - 1].pai)) ||
                      pool[i].pai == pool[i - 1].pai);
        pool[i].rank = tie_with_prev ? pool[i - 1].rank : i + 1;
    }

    RankedPartnerList list;
    list.target = std::string(target);
    list.variant = variant.method;
    list.afi_cutoff_n = n;
    list.entries = std::move(pool);
    return list;
}

enum class SizeMeasure { all_papers, intl_papers };

inline std::string_view to_string(SizeMeasure m) {
    return m == SizeMeasure::all_papers ? "all_papers" : "intl_papers";
}

struct SizeCorrelation {
    CorrResult pearson;
    CorrResult spearman;
    std::size_t n_used = 0;
};

// Correlates the target's partner values against partner sizes, after
// dropping missing cells and the no-collaboration cells (NPAI = -1, or
// PAI = 0 for raw results).
inline SizeCorrelation size_dependence(const VariantResult& variant, const StatsTable& stats,
                                       std::string_view target, SizeMeasure measure) {
    auto idx = variant.index_of(target);
    if (!idx) throw ConfigError("unknown country '" + std::string(target) + "'");
    const std::size_t t = *idx;

    PairedVector v;
    for (std::size_t j = 0; j < variant.size(); ++j) {
        if (j == t) continue;
        const double val = variant.at(t, j);
        if (is_missing(val)) {
            v.exclusion_log.emplace_back(variant.labels[j], "missing value");
            continue;
        }
        if (detail::excluded_value(variant, val)) {
            v.exclusion_log.emplace_back(variant.labels[j], "no collaboration");
            continue;
        }
        auto it = stats.find(variant.labels[j]);
        if (it == stats.end())
            throw ConfigError("no stats entry for country '" + variant.labels[j] + "'");
        v.labels.push_back(variant.labels[j]);
        v.x.push_back(val);
        v.y.push_back(static_cast<double>(measure == SizeMeasure::all_papers
                                              ? it->second.total_papers
                                              : it->second.intl_papers));
    }

    SizeCorrelation out;
    out.pearson = pearson(v);
    out.spearman = spearman(v);
    out.n_used = v.size();
    return out;
}

}  // namespace pai
