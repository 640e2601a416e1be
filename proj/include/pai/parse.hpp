#pragma once

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pai/record.hpp"
#include "pai/types.hpp"

namespace pai {

enum class RecordFormat { jsonl, csv };

inline std::optional<RecordFormat> parse_record_format(std::string_view s) {
    if (s == "jsonl" || s == "json") return RecordFormat::jsonl;
    if (s == "csv") return RecordFormat::csv;
    return std::nullopt;
}

struct Rejection {
    std::string id;
    std::string reason;
};

struct ParsedRecords {
    std::vector<PublicationRecord> records;  // input order, countries deduplicated
    std::vector<Rejection> rejected;
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::vector<std::string> dedup_sorted(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

inline int parse_int_field(const std::string& s, std::size_t line_no, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(trim(s), &pos);
        if (pos != trim(s).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

inline void finish_record(PublicationRecord rec, ParsedRecords& out) {
    if (rec.countries.empty()) {
        out.rejected.push_back({rec.id, "empty country set"});
        return;
    }
    if (rec.author_count < 1) {
        out.rejected.push_back({rec.id, "author count < 1"});
        return;
    }
    out.records.push_back(std::move(rec));
}

}  // namespace detail

// JSONL: one object per line, {"id": ..., "year": ..., "countries": [...], "authors": ...}.
// CSV: id,year,authors,countries with the country list semicolon-joined (and
// usually quoted); a leading "id,year,authors,countries" header row is skipped.
// Malformed lines throw ParseError with the line number; structurally valid
// records that violate the record invariants are reported as rejections.
inline ParsedRecords parse_records(std::istream& in, RecordFormat format) {
    ParsedRecords out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty()) continue;

        PublicationRecord rec;
        if (format == RecordFormat::jsonl) {
            nlohmann::json j = nlohmann::json::parse(stripped, nullptr, false);
            if (j.is_discarded()) throw ParseError(line_no, "invalid JSON");
            if (!j.is_object() || !j.contains("id") || !j.contains("countries"))
                throw ParseError(line_no, "record needs 'id' and 'countries' fields");
            try {
                rec.id = j.at("id").is_string() ? j.at("id").get<std::string>()
                                                : j.at("id").dump();
                rec.year = j.value("year", 0);
                rec.author_count = j.value("authors", 1);
                std::vector<std::string> names;
                for (const auto& c : j.at("countries")) names.push_back(trim(c.get<std::string>()));
                names.erase(std::remove_if(names.begin(), names.end(),
                                           [](const std::string& s) { return s.empty(); }),
                            names.end());
                rec.countries = detail::dedup_sorted(std::move(names));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(line_no, std::string("bad field type: ") + e.what());
            }
        } else {
            auto fields = detail::split_csv_row(line);
            if (line_no == 1 && fields.size() >= 4 && trim(fields[0]) == "id") continue;
            if (fields.size() != 4)
                throw ParseError(line_no, "expected 4 columns: id,year,authors,countries");
            rec.id = trim(fields[0]);
            if (rec.id.empty()) throw ParseError(line_no, "empty id");
            rec.year = detail::parse_int_field(fields[1], line_no, "year");
            rec.author_count = detail::parse_int_field(fields[2], line_no, "authors");
            std::vector<std::string> names;
            std::string cur;
            for (char c : fields[3] + ";") {
                if (c == ';') {
                    std::string name = trim(cur);
                    if (!name.empty()) names.push_back(name);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            rec.countries = detail::dedup_sorted(std::move(names));
        }
        detail::finish_record(std::move(rec), out);
    }
    return out;
}

}  // namespace pai
