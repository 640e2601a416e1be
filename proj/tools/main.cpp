// pai: country co-authorship affinity pipeline.
// Subcommands mirror the four pipeline stages: ingest records into a link
// matrix + per-country stats, compute the affinity variants, then compare,
// rank, or size-correlate the results. Every stage reads its predecessor's
// output directory and writes a fresh one; outputs are byte-deterministic.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pai/pai.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNonConverged = 3;

struct Options {
    std::string input;
    std::string input_format;  // jsonl|csv, inferred from extension when empty
    std::string aliases;
    std::string diagonal = "zero";
    std::vector<std::string> methods;  // empty = all available
    std::string normalize;             // none|power|linear; empty = default (power)
    bool normalize_given = false;
    std::vector<std::string> targets;
    std::size_t top_n = 10;
    double tolerance = 1e-9;
    std::size_t max_iter = 1000;
    std::string iter_rule = "neutral";
    std::string out;
    std::string format = "csv";
    std::string compare_mode = "row";
    bool allow_nonconverged = false;
    std::string config_path;
};

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

// Flat key=value config file; '#' starts a comment. Values may be quoted.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(pai::read_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = pai::trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw pai::ParseError(line_no, "expected key=value in config file");
        std::string key = pai::trim(stripped.substr(0, eq));
        std::string value = pai::trim(stripped.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        kv[key] = value;
    }
    return kv;
}

// Config fills in only the options the command line left untouched.
void apply_config(CLI::App* sub, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        CLI::Option* op = sub->get_option_no_throw("--" + key);
        if (!op) {
            warn("config key '" + key + "' does not apply to '" + sub->get_name() + "'");
            continue;
        }
        if (op->count() > 0) continue;  // flags win
        op->add_result(value);
        op->run_callback();
    }
}

[[noreturn]] void fail(const std::string& slug, const std::string& msg) {
    std::cerr << "error: " << slug << ": " << msg << '\n';
    std::exit(kExitError);
}

pai::NormalizeMode normalize_mode(const Options& opt) {
    const std::string name = opt.normalize.empty() ? "power" : opt.normalize;
    auto mode = pai::parse_normalize_mode(name);
    if (!mode) fail("config", "unknown normalize mode '" + name + "'");
    return *mode;
}

pai::DiagonalUpdateRule iter_rule(const Options& opt) {
    if (opt.iter_rule == "neutral") return pai::DiagonalUpdateRule::neutral;
    if (opt.iter_rule == "literal") return pai::DiagonalUpdateRule::paper_literal;
    fail("config", "unknown iter-rule '" + opt.iter_rule + "'");
}

std::vector<pai::Method> parse_methods(const std::vector<std::string>& names,
                                       bool include_salton_by_default) {
    std::vector<pai::Method> methods;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        methods = {pai::Method::m1, pai::Method::m2, pai::Method::m3, pai::Method::m4,
                   pai::Method::m5, pai::Method::m6, pai::Method::m7};
        if (include_salton_by_default) methods.push_back(pai::Method::salton);
        return methods;
    }
    for (const auto& name : names) {
        auto m = pai::parse_method(name);
        if (!m) fail("config", "unknown method '" + name + "'");
        methods.push_back(*m);
    }
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    return methods;
}

void check_paths_distinct(const Options& opt) {
    if (opt.out.empty()) fail("config", "--out is required");
    if (opt.tolerance < 0) fail("config", "--tolerance must be >= 0 (0 runs to stationarity)");
    const fs::path out = fs::weakly_canonical(opt.out);
    for (const std::string& p : {opt.input, opt.aliases, opt.config_path}) {
        if (p.empty()) continue;
        if (fs::weakly_canonical(p) == out)
            fail("config", "input path '" + p + "' equals the output directory");
    }
}

// Created only after all inputs are loaded and results computed, so failures
// leave no partial output behind.
void prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) fail("io", "'" + out + "' exists and is not a directory");
        if (!fs::is_empty(dir)) fail("io", "output directory '" + out + "' is not empty");
    } else if (!fs::create_directories(dir, ec)) {
        fail("io", "cannot create output directory '" + out + "': " + ec.message());
    }
}

void write_out(const std::string& out, const std::string& name, const std::string& content) {
    pai::write_file((fs::path(out) / name).string(), content);
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---- stage inputs ----

pai::RecordFormat infer_format(const Options& opt) {
    if (!opt.input_format.empty()) {
        auto f = pai::parse_record_format(opt.input_format);
        if (!f) fail("config", "unknown input format '" + opt.input_format + "'");
        return *f;
    }
    return fs::path(opt.input).extension() == ".csv" ? pai::RecordFormat::csv
                                                     : pai::RecordFormat::jsonl;
}

pai::CoauthMatrix load_matrix(const fs::path& dir) {
    std::string csv = pai::read_file((dir / "matrix.csv").string());
    std::string sidecar = pai::read_file((dir / "matrix.json").string());
    std::istringstream in(csv);
    return pai::read_matrix(in, json::parse(sidecar));
}

pai::StatsTable load_stats(const fs::path& dir, const char* needed_by) {
    const fs::path path = dir / "stats.csv";
    if (!fs::exists(path))
        fail("config", std::string("missing input '") + path.string() + "' (needed by " +
                           needed_by + ")");
    std::istringstream in(pai::read_file(path.string()));
    return pai::read_stats_csv(in);
}

pai::VariantResult load_variant(const fs::path& dir, pai::Method method,
                                pai::NormalizeMode preferred) {
    const std::string base = std::string(pai::to_string(method));
    std::string stem = base;
    if (preferred != pai::NormalizeMode::none &&
        fs::exists(dir / (base + "_npai.csv")))
        stem = base + "_npai";
    const fs::path csv = dir / (stem + ".csv");
    if (!fs::exists(csv))
        fail("config", "missing variant file '" + csv.string() + "' (run the pai stage first)");
    std::istringstream in(pai::read_file(csv.string()));
    return pai::read_variant(in, json::parse(pai::read_file((dir / (stem + ".json")).string())));
}

void check_target(const std::vector<std::string>& labels, const std::string& target) {
    if (std::binary_search(labels.begin(), labels.end(), target)) return;
    std::string valid;
    for (const auto& l : labels) {
        if (!valid.empty()) valid += ", ";
        valid += l;
    }
    fail("data", "unknown target '" + target + "'; valid codes: " + valid);
}

// ---- subcommands ----

int cmd_ingest(const Options& opt, const std::string& effective_config) {
    check_paths_distinct(opt);
    auto strategy = pai::parse_diagonal_strategy(opt.diagonal);
    if (!strategy) fail("config", "unknown diagonal strategy '" + opt.diagonal + "'");

    pai::CountryAliasTable aliases;
    if (!opt.aliases.empty()) {
        std::istringstream in(pai::read_file(opt.aliases));
        aliases = pai::CountryAliasTable::load_csv(in);
    }

    std::string input_bytes = pai::read_file(opt.input);
    std::istringstream in(input_bytes);
    pai::Corpus corpus = pai::ingest_records(in, infer_format(opt),
                                             aliases.empty() ? nullptr : &aliases);

    if (corpus.records.empty()) warn("input produced no records; writing an empty matrix");
    if (corpus.report.records_read > 0 &&
        2 * corpus.report.records_rejected > corpus.report.records_read)
        warn("more than half of the records were rejected; check the alias table");

    pai::StatsTable stats = pai::build_stats(corpus.records);
    pai::CoauthMatrix matrix =
        pai::build_matrix(corpus.records,
                          *strategy == pai::DiagonalStrategy::iterative
                              ? pai::DiagonalStrategy::zero
                              : *strategy,
                          &stats);

    bool nonconverged = false;
    std::string fixpoint_json;
    if (*strategy == pai::DiagonalStrategy::iterative) {
        auto [iterated, report] =
            pai::iterate_diagonal(matrix, opt.tolerance, opt.max_iter, iter_rule(opt));
        matrix = std::move(iterated);
        fixpoint_json = json_text(pai::fixpoint_to_json(report, opt.tolerance, opt.max_iter));
        if (!report.converged) {
            warn("iterative diagonal did not converge in " + std::to_string(opt.max_iter) +
                 " sweeps");
            nonconverged = true;
        }
    }

    std::ostringstream matrix_csv, stats_csv;
    pai::write_matrix_csv(matrix_csv, matrix);
    pai::write_stats_csv(stats_csv, stats);

    prepare_out_dir(opt.out);
    write_out(opt.out, "matrix.csv", matrix_csv.str());
    write_out(opt.out, "matrix.json", json_text(pai::matrix_sidecar(matrix)));
    write_out(opt.out, "stats.csv", stats_csv.str());
    write_out(opt.out, "ingest_report.json", json_text(pai::ingest_report_to_json(corpus.report)));
    if (!fixpoint_json.empty()) write_out(opt.out, "diagonal_fixpoint.json", fixpoint_json);
    write_out(opt.out, "config.effective", effective_config);

    if (nonconverged && !opt.allow_nonconverged) return kExitNonConverged;
    return 0;
}

int cmd_pai(const Options& opt, const std::string& effective_config) {
    check_paths_distinct(opt);
    const fs::path dir(opt.input);
    pai::CoauthMatrix loaded = load_matrix(dir);
    pai::CoauthMatrix base = pai::with_zero_diagonal(loaded);

    std::vector<pai::Method> methods = parse_methods(opt.methods, false);
    const bool needs_stats =
        std::any_of(methods.begin(), methods.end(), [](pai::Method m) {
            return m == pai::Method::m1 || m == pai::Method::m4 || m == pai::Method::m5 ||
                   m == pai::Method::m6 || m == pai::Method::salton;
        });
    pai::StatsTable stats;
    if (needs_stats) stats = load_stats(dir, "m1/m4/m5/m6/salton");

    const pai::NormalizeMode norm = normalize_mode(opt);
    std::vector<std::string> warnings;
    bool nonconverged = false;

    struct OutFile {
        std::string name;
        std::string content;
    };
    std::vector<OutFile> files;
    auto add_result = [&](const pai::VariantResult& r, const std::string& stem) {
        std::ostringstream csv;
        pai::write_variant_csv(csv, r);
        files.push_back({stem + ".csv", csv.str()});
        files.push_back({stem + ".json", json_text(pai::variant_sidecar(r))});
    };

    for (pai::Method method : methods) {
        pai::VariantResult raw;
        switch (method) {
            case pai::Method::m1:
                raw = pai::pai_m1(base, stats);
                break;
            case pai::Method::m2:
                raw = pai::pai_overlapping(base, &warnings);
                break;
            case pai::Method::m3: {
                auto [iterated, report] =
                    pai::iterate_diagonal(base, opt.tolerance, opt.max_iter, iter_rule(opt));
                raw = pai::pai_overlapping(iterated, &warnings);
                std::ostringstream diag_csv;
                diag_csv << "country,diagonal\n";
                for (std::size_t i = 0; i < iterated.size(); ++i)
                    diag_csv << iterated.labels[i] << ','
                             << pai::format_cell(iterated.at(i, i)) << '\n';
                files.push_back({"m3_diagonal.csv", diag_csv.str()});
                files.push_back({"m3_fixpoint.json",
                                 json_text(pai::fixpoint_to_json(report, opt.tolerance,
                                                                 opt.max_iter))});
                if (!report.converged) {
                    warnings.push_back("m3: iterative diagonal did not converge in " +
                                       std::to_string(opt.max_iter) + " sweeps");
                    nonconverged = true;
                }
                break;
            }
            case pai::Method::m4:
            case pai::Method::m5:
            case pai::Method::m6: {
                auto strategy = method == pai::Method::m4   ? pai::DiagonalStrategy::all_papers
                                : method == pai::Method::m5 ? pai::DiagonalStrategy::intl_papers
                                                            : pai::DiagonalStrategy::intra_papers;
                raw = pai::pai_overlapping(pai::with_diagonal(base, strategy, &stats), &warnings);
                break;
            }
            case pai::Method::m7:
                raw = pai::pai_m7(base);
                break;
            case pai::Method::salton:
                raw = pai::salton_ochiai(stats, base);
                break;
        }
        add_result(raw, std::string(pai::to_string(method)));

        // M7 stays unnormalized unless --normalize was given explicitly;
        // salton is a similarity, not a PAI, and is never normalized.
        const bool skip = method == pai::Method::salton ||
                          (method == pai::Method::m7 && !opt.normalize_given);
        if (norm != pai::NormalizeMode::none && !skip)
            add_result(pai::normalize(raw, norm, &warnings),
                       std::string(pai::to_string(method)) + "_npai");
    }

    // Copy the interchange inputs forward so this directory is self-contained.
    prepare_out_dir(opt.out);
    write_out(opt.out, "matrix.csv", pai::read_file((dir / "matrix.csv").string()));
    write_out(opt.out, "matrix.json", pai::read_file((dir / "matrix.json").string()));
    if (fs::exists(dir / "stats.csv"))
        write_out(opt.out, "stats.csv", pai::read_file((dir / "stats.csv").string()));
    for (const auto& f : files) write_out(opt.out, f.name, f.content);
    write_out(opt.out, "config.effective", effective_config);

    for (const auto& w : warnings) warn(w);
    if (nonconverged && !opt.allow_nonconverged) return kExitNonConverged;
    return 0;
}

std::vector<pai::Method> methods_with_files(const fs::path& dir,
                                            const std::vector<std::string>& requested) {
    if (!requested.empty()) return parse_methods(requested, false);
    std::vector<pai::Method> found;
    for (pai::Method m : {pai::Method::m1, pai::Method::m2, pai::Method::m3, pai::Method::m4,
                          pai::Method::m5, pai::Method::m6, pai::Method::m7}) {
        if (fs::exists(dir / (std::string(pai::to_string(m)) + ".csv"))) found.push_back(m);
    }
    if (found.empty()) fail("config", "no variant files in '" + dir.string() + "'");
    return found;
}

int cmd_compare(const Options& opt, const std::string& effective_config) {
    check_paths_distinct(opt);
    const fs::path dir(opt.input);
    auto mode = pai::parse_compare_mode(opt.compare_mode);
    if (!mode) fail("config", "unknown compare mode '" + opt.compare_mode + "'");
    if (*mode == pai::CompareMode::row && opt.targets.empty())
        fail("config", "--target is required in row mode");

    const pai::NormalizeMode preferred = normalize_mode(opt);
    std::vector<pai::VariantResult> results;
    for (pai::Method m : methods_with_files(dir, opt.methods))
        results.push_back(load_variant(dir, m, preferred));

    struct Report {
        std::string name;
        pai::ComparisonReport report;
    };
    std::vector<Report> reports;
    if (*mode == pai::CompareMode::flat) {
        reports.push_back({"compare_flat", pai::compare_variants("", results, *mode)});
    } else {
        for (const auto& target : opt.targets) {
            check_target(results.front().labels, target);
            reports.push_back(
                {"compare_" + target, pai::compare_variants(target, results, *mode)});
        }
    }

    prepare_out_dir(opt.out);
    for (const auto& r : reports) {
        if (opt.format == "json") {
            write_out(opt.out, r.name + ".json", json_text(pai::comparison_to_json(r.report)));
        } else {
            std::ostringstream csv;
            pai::write_comparison_csv(csv, r.report);
            write_out(opt.out, r.name + ".csv", csv.str());
        }
    }
    write_out(opt.out, "config.effective", effective_config);
    return 0;
}

int cmd_rank(const Options& opt, const std::string& effective_config) {
    check_paths_distinct(opt);
    const fs::path dir(opt.input);
    if (opt.targets.empty()) fail("config", "--target is required");
    pai::CoauthMatrix matrix = load_matrix(dir);

    std::vector<std::pair<std::string, pai::RankedPartnerList>> lists;
    for (pai::Method m : methods_with_files(dir, opt.methods)) {
        pai::VariantResult variant = load_variant(dir, m, pai::NormalizeMode::none);
        for (const auto& target : opt.targets) {
            check_target(matrix.labels, target);
            lists.emplace_back("rank_" + target + "_" + std::string(pai::to_string(m)),
                               pai::rank_partners(target, matrix, variant, opt.top_n));
        }
    }

    prepare_out_dir(opt.out);
    for (const auto& [name, list] : lists) {
        if (opt.format == "json") {
            write_out(opt.out, name + ".json", json_text(pai::ranking_to_json(list)));
        } else {
            std::ostringstream csv;
            pai::write_ranking_csv(csv, list);
            write_out(opt.out, name + ".csv", csv.str());
        }
    }
    write_out(opt.out, "config.effective", effective_config);
    return 0;
}

int cmd_size_corr(const Options& opt, const std::string& effective_config) {
    check_paths_distinct(opt);
    const fs::path dir(opt.input);
    if (opt.targets.empty()) fail("config", "--target is required");
    pai::StatsTable stats = load_stats(dir, "size-corr");

    const pai::NormalizeMode preferred = normalize_mode(opt);
    std::vector<std::pair<pai::Method, pai::VariantResult>> variants;
    for (pai::Method m : methods_with_files(dir, opt.methods))
        variants.emplace_back(m, load_variant(dir, m, preferred));

    struct Out {
        std::string target;
        std::vector<pai::SizeCorrRow> rows;
    };
    std::vector<Out> outputs;
    for (const auto& target : opt.targets) {
        check_target(variants.front().second.labels, target);
        Out o;
        o.target = target;
        for (const auto& [method, variant] : variants) {
            for (pai::SizeMeasure measure :
                 {pai::SizeMeasure::all_papers, pai::SizeMeasure::intl_papers}) {
                o.rows.push_back(
                    {method, measure, pai::size_dependence(variant, stats, target, measure)});
            }
        }
        outputs.push_back(std::move(o));
    }

    prepare_out_dir(opt.out);
    for (const auto& o : outputs) {
        const std::string name = "size_corr_" + o.target;
        if (opt.format == "json") {
            write_out(opt.out, name + ".json", json_text(pai::size_corr_to_json(o.target, o.rows)));
        } else {
            std::ostringstream csv;
            pai::write_size_corr_csv(csv, o.rows);
            write_out(opt.out, name + ".csv", csv.str());
        }
    }
    write_out(opt.out, "config.effective", effective_config);
    return 0;
}

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--out", opt.out, "Output directory (must be new or empty)")->required();
    sub->add_option("--format", opt.format, "Report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", opt.config_path, "Key=value config file; command-line flags win");
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ',';
        out += item;
    }
    return out;
}

// The resolved configuration, defaults included, written into every output
// directory so a run can be reproduced from it.
std::string effective_config(const CLI::App* sub, const Options& opt) {
    const std::string name = sub->get_name();
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", name);
    kv.emplace_back("input", opt.input);
    kv.emplace_back("out", opt.out);
    kv.emplace_back("format", opt.format);
    if (name == "ingest") {
        kv.emplace_back("input-format", opt.input_format);
        kv.emplace_back("aliases", opt.aliases);
        kv.emplace_back("diagonal", opt.diagonal);
    }
    if (name == "pai" || name == "compare" || name == "rank" || name == "size-corr")
        kv.emplace_back("methods", opt.methods.empty() ? "all" : join(opt.methods));
    if (name == "pai" || name == "compare" || name == "size-corr")
        kv.emplace_back("normalize", opt.normalize.empty() ? "power" : opt.normalize);
    if (name == "ingest" || name == "pai") {
        kv.emplace_back("tolerance", pai::format_cell(opt.tolerance));
        kv.emplace_back("max-iter", std::to_string(opt.max_iter));
        kv.emplace_back("iter-rule", opt.iter_rule);
        kv.emplace_back("allow-nonconverged", opt.allow_nonconverged ? "true" : "false");
    }
    if (name == "compare" || name == "rank" || name == "size-corr")
        kv.emplace_back("target", join(opt.targets));
    if (name == "compare") kv.emplace_back("compare-mode", opt.compare_mode);
    if (name == "rank") kv.emplace_back("top-n", std::to_string(opt.top_n));

    std::sort(kv.begin(), kv.end());
    std::string out;
    for (const auto& [key, value] : kv) out += key + "=" + value + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic affinity analysis of country co-authorship networks"};
    app.require_subcommand(1);

    Options opt;

    CLI::App* ingest = app.add_subcommand("ingest", "Parse records into matrix + stats");
    ingest->add_option("--input", opt.input, "Record file (JSONL or CSV)")->required();
    ingest->add_option("--input-format", opt.input_format, "jsonl or csv (default: by extension)");
    ingest->add_option("--aliases", opt.aliases, "Country alias CSV (raw,canonical)");
    ingest->add_option("--diagonal", opt.diagonal,
                       "Diagonal of the written matrix: zero|iterative|all|intl|intra");
    ingest->add_option("--tolerance", opt.tolerance, "Fixed-point tolerance");
    ingest->add_option("--max-iter", opt.max_iter, "Fixed-point sweep limit");
    ingest->add_option("--iter-rule", opt.iter_rule, "neutral|literal diagonal update");
    ingest->add_flag("--allow-nonconverged", opt.allow_nonconverged,
                     "Exit 0 even if the iterative diagonal did not converge");
    add_common(ingest, opt);

    CLI::App* paicmd = app.add_subcommand("pai", "Compute PAI variants from an ingest directory");
    paicmd->add_option("--input", opt.input, "Ingest output directory")->required();
    paicmd->add_option("--methods", opt.methods, "m1..m7, salton, or all")->delimiter(',');
    auto* norm_opt =
        paicmd->add_option("--normalize", opt.normalize, "none|power|linear (default power)");
    paicmd->add_option("--tolerance", opt.tolerance, "m3 fixed-point tolerance");
    paicmd->add_option("--max-iter", opt.max_iter, "m3 sweep limit");
    paicmd->add_option("--iter-rule", opt.iter_rule, "neutral|literal diagonal update");
    paicmd->add_flag("--allow-nonconverged", opt.allow_nonconverged,
                     "Exit 0 even if m3 did not converge");
    add_common(paicmd, opt);

    CLI::App* compare = app.add_subcommand("compare", "Correlate variant pairs per target");
    compare->add_option("--input", opt.input, "pai output directory")->required();
    compare->add_option("--methods", opt.methods, "Methods to compare")->delimiter(',');
    compare->add_option("--target", opt.targets, "Target country code(s)")->delimiter(',');
    compare->add_option("--normalize", opt.normalize,
                        "Which files to compare: none|power|linear (default power)");
    compare->add_option("--compare-mode", opt.compare_mode, "row (per target) or flat");
    add_common(compare, opt);

    CLI::App* rank = app.add_subcommand("rank", "AFI-gated partner ranking per target");
    rank->add_option("--input", opt.input, "pai output directory")->required();
    rank->add_option("--methods", opt.methods, "Variants to rank by")->delimiter(',');
    rank->add_option("--target", opt.targets, "Target country code(s)")->delimiter(',');
    rank->add_option("--top-n", opt.top_n, "AFI cutoff (default 10)");
    add_common(rank, opt);

    CLI::App* size_corr = app.add_subcommand("size-corr", "Correlate values with country size");
    size_corr->add_option("--input", opt.input, "pai output directory")->required();
    size_corr->add_option("--methods", opt.methods, "Methods to include")->delimiter(',');
    size_corr->add_option("--target", opt.targets, "Target country code(s)")->delimiter(',');
    size_corr->add_option("--normalize", opt.normalize,
                          "Which files to use: none|power|linear (default power)");
    add_common(size_corr, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: usage: " << e.what() << '\n';
        return kExitError;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!opt.config_path.empty()) apply_config(sub, load_config_file(opt.config_path));
        opt.normalize_given = norm_opt->count() > 0 || !opt.normalize.empty();
        const std::string effective = effective_config(sub, opt);
        if (sub == ingest) return cmd_ingest(opt, effective);
        if (sub == paicmd) return cmd_pai(opt, effective);
        if (sub == compare) return cmd_compare(opt, effective);
        if (sub == rank) return cmd_rank(opt, effective);
        return cmd_size_corr(opt, effective);
    } catch (const CLI::Error& e) {
        std::cerr << "error: config: " << e.what() << '\n';
    } catch (const pai::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
    } catch (const pai::ParseError& e) {
        std::cerr << "error: parse: " << e.what() << '\n';
    } catch (const pai::DataError& e) {
        std::cerr << "error: data: " << e.what() << '\n';
    } catch (const pai::IoError& e) {
        std::cerr << "error: io: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
    }
    return kExitError;
}
