#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pai/parse.hpp"
#include "pai/record.hpp"
#include "pai/types.hpp"

namespace pai {

struct IngestReport {
    std::size_t records_read = 0;
    std::size_t records_rejected = 0;
    std::map<std::string, std::size_t> unmapped_names;
    std::vector<Rejection> rejections;
};

struct Corpus {
    std::vector<PublicationRecord> records;
    IngestReport report;
};

inline nlohmann::json ingest_report_to_json(const IngestReport& r) {
    nlohmann::json rejections = nlohmann::json::array();
    for (const auto& rej : r.rejections)
        rejections.push_back({{"id", rej.id}, {"reason", rej.reason}});
    return {{"records_read", r.records_read},
            {"records_rejected", r.records_rejected},
            {"unmapped_names", r.unmapped_names},
            {"rejections", rejections}};
}

// Parse, then canonicalize country names. Without an alias table the trimmed
// raw names are taken as codes; with one, unknown names are counted as
// unmapped and dropped from the record (a record left with no countries is
// rejected, not silently kept).
inline Corpus ingest_records(std::istream& in, RecordFormat format,
                             const CountryAliasTable* aliases = nullptr) {
    Corpus corpus;
    ParsedRecords parsed = parse_records(in, format);
    corpus.report.records_read = parsed.records.size() + parsed.rejected.size();
    for (auto& rej : parsed.rejected) corpus.report.rejections.push_back(std::move(rej));

    for (auto& rec : parsed.records) {
        if (aliases && !aliases->empty()) {
            std::vector<std::string> codes;
            for (const auto& name : rec.countries) {
                auto code = normalize_country(name, *aliases);
                if (code)
                    codes.push_back(*code);
                else
                    corpus.report.unmapped_names[name] += 1;
            }
            rec.countries = detail::dedup_sorted(std::move(codes));
        }
        if (rec.countries.empty()) {
            corpus.report.rejections.push_back({rec.id, "no mappable countries"});
            continue;
        }
        corpus.records.push_back(std::move(rec));
    }
    corpus.report.records_rejected = corpus.report.rejections.size();
    return corpus;
}

}  // namespace pai
