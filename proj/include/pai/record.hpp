#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pai/types.hpp"

namespace pai {

// One publication: countries deduplicated and sorted, author_count >= 1.
struct PublicationRecord {
    std::string id;
    int year = 0;
    std::vector<std::string> countries;
    int author_count = 1;
};

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// raw name -> canonical code, case-insensitive after trimming. Canonical codes
// are registered as their own aliases so canonicalization is idempotent.
class CountryAliasTable {
public:
    void add(std::string_view raw, std::string_view canonical) {
        std::string code = trim(canonical);
        table_[fold(raw)] = code;
        table_[fold(code)] = code;
    }

    // Canonical code, or nullopt for an unknown name (the unmapped marker).
    std::optional<std::string> lookup(std::string_view raw) const {
        auto it = table_.find(fold(raw));
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

    bool empty() const { return table_.empty(); }
    std::size_t size() const { return table_.size(); }

    // Two-column CSV: raw,canonical. Blank lines and lines starting with '#'
    // are skipped.
    static CountryAliasTable load_csv(std::istream& in) {
        CountryAliasTable t;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            auto comma = stripped.find(',');
            if (comma == std::string::npos)
                throw ParseError(line_no, "alias row needs two comma-separated columns");
            std::string raw = trim(stripped.substr(0, comma));
            std::string canonical = trim(stripped.substr(comma + 1));
            if (raw.empty() || canonical.empty())
                throw ParseError(line_no, "alias row has an empty column");
            t.add(raw, canonical);
        }
        return t;
    }

private:
    static std::string fold(std::string_view s) {
        std::string f = trim(s);
        std::transform(f.begin(), f.end(), f.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return f;
    }

    std::map<std::string, std::string> table_;
};

inline std::optional<std::string> normalize_country(std::string_view raw,
                                                    const CountryAliasTable& aliases) {
    return aliases.lookup(raw);
}

}  // namespace pai
