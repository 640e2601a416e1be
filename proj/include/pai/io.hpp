#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pai/analysis.hpp"
#include "pai/fixpoint.hpp"
#include "pai/matrix.hpp"
#include "pai/parse.hpp"
#include "pai/stats.hpp"
#include "pai/types.hpp"
#include "pai/variants.hpp"

namespace pai {

// Interchange cells: missing -> empty field, integral counts as integers,
// everything else shortest round-trip so downstream stages see the exact
// value that was computed.
inline std::string format_cell(double v) {
    if (is_missing(v)) return {};
    if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
        return std::to_string(static_cast<std::int64_t>(v));
    }
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Report cells: 6 significant digits.
inline std::string format_sig6(double v) {
    if (is_missing(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline double parse_cell(const std::string& field, std::size_t line_no) {
    if (trim(field).empty()) return missing();
    const std::string s = trim(field);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line_no, "bad numeric cell '" + field + "'");
    return v;
}

// ---- matrix-shaped CSV (header row and column of country codes) ----

namespace detail {

template <typename CellFn>
void write_grid_csv(std::ostream& out, const std::vector<std::string>& labels, CellFn cell) {
    for (const auto& l : labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << labels[i];
        for (std::size_t j = 0; j < labels.size(); ++j) out << ',' << format_cell(cell(i, j));
        out << '\n';
    }
}

struct Grid {
    std::vector<std::string> labels;
    std::vector<double> values;
};

inline Grid read_grid_csv(std::istream& in) {
    Grid g;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty matrix file");
    auto header = detail::split_csv_row(line);
    for (std::size_t k = 1; k < header.size(); ++k) g.labels.push_back(trim(header[k]));
    const std::size_t n = g.labels.size();
    g.values.assign(n * n, missing());
    std::size_t row = 0, line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = detail::split_csv_row(line);
        if (fields.size() != n + 1)
            throw ParseError(line_no, "expected " + std::to_string(n + 1) + " columns");
        if (row >= n) throw ParseError(line_no, "more rows than labels");
        if (trim(fields[0]) != g.labels[row])
            throw ParseError(line_no, "row label '" + fields[0] + "' out of order");
        for (std::size_t j = 0; j < n; ++j)
            g.values[row * n + j] = parse_cell(fields[j + 1], line_no);
        ++row;
    }
    if (row != n) throw IoError("matrix has " + std::to_string(row) + " rows, expected " +
                                std::to_string(n));
    return g;
}

}  // namespace detail

inline void write_matrix_csv(std::ostream& out, const CoauthMatrix& m) {
    detail::write_grid_csv(out, m.labels, [&](std::size_t i, std::size_t j) { return m.at(i, j); });
}

inline nlohmann::json matrix_sidecar(const CoauthMatrix& m) {
    return {{"diagonal_strategy", to_string(m.diagonal_strategy)},
            {"n_all_papers", m.n_all_papers},
            {"labels", m.labels}};
}

inline CoauthMatrix read_matrix(std::istream& csv, const nlohmann::json& sidecar) {
    auto grid = detail::read_grid_csv(csv);
    CoauthMatrix m;
    m.labels = std::move(grid.labels);
    m.cells = std::move(grid.values);
    for (double& v : m.cells)
        if (is_missing(v)) throw IoError("co-authorship matrix has an empty cell");
    auto strategy = parse_diagonal_strategy(sidecar.at("diagonal_strategy").get<std::string>());
    if (!strategy) throw IoError("sidecar has unknown diagonal_strategy");
    m.diagonal_strategy = *strategy;
    m.n_all_papers = sidecar.at("n_all_papers").get<std::int64_t>();
    if (sidecar.contains("labels") &&
        sidecar.at("labels").get<std::vector<std::string>>() != m.labels)
        throw IoError("sidecar labels disagree with the matrix CSV");
    return m;
}

inline void write_variant_csv(std::ostream& out, const VariantResult& r) {
    detail::write_grid_csv(out, r.labels, [&](std::size_t i, std::size_t j) { return r.at(i, j); });
}

inline nlohmann::json variant_sidecar(const VariantResult& r) {
    return {{"method", to_string(r.method)},
            {"normalized", to_string(r.normalized)},
            {"diagonal_strategy", to_string(r.diagonal_strategy)},
            {"labels", r.labels}};
}

inline VariantResult read_variant(std::istream& csv, const nlohmann::json& sidecar) {
    auto grid = detail::read_grid_csv(csv);
    VariantResult r;
    r.labels = std::move(grid.labels);
    r.values = std::move(grid.values);
    auto method = parse_method(sidecar.at("method").get<std::string>());
    auto norm = parse_normalize_mode(sidecar.at("normalized").get<std::string>());
    auto strategy = parse_diagonal_strategy(sidecar.at("diagonal_strategy").get<std::string>());
    if (!method || !norm || !strategy) throw IoError("variant sidecar has unknown tags");
    r.method = *method;
    r.normalized = *norm;
    r.diagonal_strategy = *strategy;
    return r;
}

// ---- stats ----

inline void write_stats_csv(std::ostream& out, const StatsTable& stats) {
    out << "country,total_papers,intl_papers,intra_collab_papers,pct_intl\n";
    for (const auto& [code, s] : stats) {
        out << code << ',' << s.total_papers << ',' << s.intl_papers << ','
            << s.intra_collab_papers << ',' << format_sig6(s.pct_intl()) << '\n';
    }
}

inline StatsTable read_stats_csv(std::istream& in) {
    StatsTable stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = detail::split_csv_row(line);
        if (line_no == 1 && trim(fields[0]) == "country") continue;
        if (fields.size() < 4) throw ParseError(line_no, "stats row needs 4+ columns");
        CountryStats s;
        s.total_papers = detail::parse_int_field(fields[1], line_no, "total_papers");
        s.intl_papers = detail::parse_int_field(fields[2], line_no, "intl_papers");
        s.intra_collab_papers = detail::parse_int_field(fields[3], line_no, "intra_collab_papers");
        stats[trim(fields[0])] = s;
    }
    return stats;
}

// ---- reports ----

inline nlohmann::json corr_to_json(const CorrResult& c) {
    nlohmann::json j;
    j["n_used"] = c.n_used;
    if (c.defined()) {
        j["value"] = *c.value;
    } else {
        j["value"] = nullptr;
        j["reason"] = c.reason;
    }
    return j;
}

inline void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
    out << "pair,pearson,spearman,n_used,pearson_reason,spearman_reason\n";
    for (const auto& p : report.pairs) {
        out << to_string(p.a) << '-' << to_string(p.b) << ','
            << (p.pearson.defined() ? format_sig6(*p.pearson.value) : "") << ','
            << (p.spearman.defined() ? format_sig6(*p.spearman.value) : "") << ','
            << p.n_used << ',' << p.pearson.reason << ',' << p.spearman.reason << '\n';
    }
}

inline nlohmann::json comparison_to_json(const ComparisonReport& report) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.pairs) {
        pairs.push_back({{"a", to_string(p.a)},
                         {"b", to_string(p.b)},
                         {"pearson", corr_to_json(p.pearson)},
                         {"spearman", corr_to_json(p.spearman)},
                         {"n_used", p.n_used}});
    }
    return {{"target", report.target},
            {"mode", report.mode == CompareMode::row ? "row" : "flat"},
            {"pairs", pairs}};
}

inline void write_ranking_csv(std::ostream& out, const RankedPartnerList& list) {
    out << "rank,partner,afi,pai\n";
    for (const auto& e : list.entries)
        out << e.rank << ',' << e.partner << ',' << format_sig6(e.afi) << ','
            << format_sig6(e.pai) << '\n';
}

inline nlohmann::json ranking_to_json(const RankedPartnerList& list) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : list.entries) {
        nlohmann::json je = {{"rank", e.rank}, {"partner", e.partner}, {"afi", e.afi}};
        if (is_missing(e.pai))
            je["pai"] = nullptr;
        else
            je["pai"] = e.pai;
        entries.push_back(std::move(je));
    }
    return {{"target", list.target},
            {"variant", to_string(list.variant)},
            {"afi_cutoff_n", list.afi_cutoff_n},
            {"entries", entries}};
}

struct SizeCorrRow {
    Method method;
    SizeMeasure measure;
    SizeCorrelation corr;
};

inline void write_size_corr_csv(std::ostream& out, const std::vector<SizeCorrRow>& rows) {
    out << "method,size_measure,pearson,spearman,n_used,pearson_reason,spearman_reason\n";
    for (const auto& r : rows) {
        out << to_string(r.method) << ',' << to_string(r.measure) << ','
            << (r.corr.pearson.defined() ? format_sig6(*r.corr.pearson.value) : "") << ','
            << (r.corr.spearman.defined() ? format_sig6(*r.corr.spearman.value) : "") << ','
            << r.corr.n_used << ',' << r.corr.pearson.reason << ',' << r.corr.spearman.reason
            << '\n';
    }
}

inline nlohmann::json size_corr_to_json(const std::string& target,
                                        const std::vector<SizeCorrRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"method", to_string(r.method)},
                       {"size_measure", to_string(r.measure)},
                       {"pearson", corr_to_json(r.corr.pearson)},
                       {"spearman", corr_to_json(r.corr.spearman)},
                       {"n_used", r.corr.n_used}});
    }
    return {{"target", target}, {"rows", arr}};
}

inline nlohmann::json fixpoint_to_json(const DiagonalFixpointReport& r, double tolerance,
                                       std::size_t max_iter) {
    return {{"iterations", r.iterations},
            {"max_residual", r.max_residual},
            {"converged", r.converged},
            {"tolerance", tolerance},
            {"max_iter", max_iter}};
}

// ---- file helpers ----

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace pai
