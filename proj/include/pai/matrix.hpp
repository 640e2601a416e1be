#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pai/stats.hpp"
#include "pai/types.hpp"

namespace pai {

// Symmetric country-by-country link matrix under full counting: every
// unordered country pair on a paper contributes one link. Margins and the
// grand total include the diagonal, whatever strategy filled it.
// n_all_papers is the paper-level count of internationally collaborative
// records and is not derivable from the cells.
struct CoauthMatrix {
    std::vector<std::string> labels;  // lexicographic
    std::vector<double> cells;        // row-major size() x size()
    DiagonalStrategy diagonal_strategy = DiagonalStrategy::zero;
    std::int64_t n_all_papers = 0;

    std::size_t size() const { return labels.size(); }

    double& at(std::size_t i, std::size_t j) { return cells[i * size() + j]; }
    double at(std::size_t i, std::size_t j) const { return cells[i * size() + j]; }

    std::optional<std::size_t> index_of(std::string_view code) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), code);
        if (it == labels.end() || *it != code) return std::nullopt;
        return static_cast<std::size_t>(it - labels.begin());
    }

    double margin(std::size_t i) const {
        double s = 0;
        for (std::size_t j = 0; j < size(); ++j) s += at(i, j);
        return s;
    }

    std::vector<double> margins() const {
        std::vector<double> m(size());
        for (std::size_t i = 0; i < size(); ++i) m[i] = margin(i);
        return m;
    }

    double total() const {
        return std::accumulate(cells.begin(), cells.end(), 0.0);
    }
};

// Replace the diagonal according to the strategy. all/intl/intra read the
// per-country counts from stats; zero and iterative clear it (the iterative
// fill itself lives in fixpoint.hpp).
inline CoauthMatrix with_diagonal(const CoauthMatrix& base, DiagonalStrategy strategy,
                                  const StatsTable* stats = nullptr) {
    CoauthMatrix m = base;
    m.diagonal_strategy = strategy;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double v = 0.0;
        switch (strategy) {
            case DiagonalStrategy::zero:
            case DiagonalStrategy::iterative:
                break;
            case DiagonalStrategy::all_papers:
            case DiagonalStrategy::intl_papers:
            case DiagonalStrategy::intra_papers: {
                if (!stats)
                    throw ConfigError("diagonal strategy '" +
                                      std::string(to_string(strategy)) +
                                      "' needs country stats");
                auto it = stats->find(m.labels[i]);
                if (it == stats->end())
                    throw ConfigError("no stats entry for country '" + m.labels[i] + "'");
                if (strategy == DiagonalStrategy::all_papers)
                    v = static_cast<double>(it->second.total_papers);
                else if (strategy == DiagonalStrategy::intl_papers)
                    v = static_cast<double>(it->second.intl_papers);
                else
                    v = static_cast<double>(it->second.intra_collab_papers);
                break;
            }
        }
        m.at(i, i) = v;
    }
    return m;
}

inline CoauthMatrix with_zero_diagonal(const CoauthMatrix& base) {
    return with_diagonal(base, DiagonalStrategy::zero);
}

// Build the link matrix from normalized records. Labels are every country
// seen in any record, sorted; isolated countries keep a zero row. For the
// stats-backed strategies, stats may be passed in or are tallied from the
// same records.
inline CoauthMatrix build_matrix(std::span<const PublicationRecord> records,
                                 DiagonalStrategy strategy = DiagonalStrategy::zero,
                                 const StatsTable* stats = nullptr) {
    CoauthMatrix m;
    m.diagonal_strategy = strategy;
    for (const auto& rec : records)
        m.labels.insert(m.labels.end(), rec.countries.begin(), rec.countries.end());
    std::sort(m.labels.begin(), m.labels.end());
    m.labels.erase(std::unique(m.labels.begin(), m.labels.end()), m.labels.end());
    m.cells.assign(m.size() * m.size(), 0.0);

    for (const auto& rec : records) {
        if (rec.countries.size() < 2) continue;
        m.n_all_papers += 1;
        for (std::size_t a = 0; a < rec.countries.size(); ++a) {
            for (std::size_t b = a + 1; b < rec.countries.size(); ++b) {
                auto i = m.index_of(rec.countries[a]);
                auto j = m.index_of(rec.countries[b]);
                m.at(*i, *j) += 1.0;
                m.at(*j, *i) += 1.0;
            }
        }
    }

    if (strategy == DiagonalStrategy::all_papers || strategy == DiagonalStrategy::intl_papers ||
        strategy == DiagonalStrategy::intra_papers) {
        StatsTable local;
        if (!stats) {
            local = build_stats(records);
            stats = &local;
        }
        return with_diagonal(m, strategy, stats);
    }
    return m;
}

}  // namespace pai
