#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "pai/record.hpp"

namespace pai {

// Per-country paper tallies under full counting. intl_papers counts papers
// whose country set has size >= 2; intra_collab_papers counts single-country
// papers with at least two authors.
struct CountryStats {
    std::int64_t total_papers = 0;
    std::int64_t intl_papers = 0;
    std::int64_t intra_collab_papers = 0;

    double pct_intl() const {
        return total_papers > 0
                   ? 100.0 * static_cast<double>(intl_papers) / static_cast<double>(total_papers)
                   : 0.0;
    }
};

using StatsTable = std::map<std::string, CountryStats>;

inline StatsTable build_stats(std::span<const PublicationRecord> records) {
    StatsTable stats;
    for (const auto& rec : records) {
        for (const auto& c : rec.countries) stats[c].total_papers += 1;
        if (rec.countries.size() >= 2) {
            for (const auto& c : rec.countries) stats[c].intl_papers += 1;
        } else if (rec.countries.size() == 1 && rec.author_count >= 2) {
            stats[rec.countries.front()].intra_collab_papers += 1;
        }
    }
    return stats;
}

}  // namespace pai
