#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "pai/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string err;
};

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("pai_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const fs::path& dir, const std::string& args) {
    const fs::path err = dir / "stderr.txt";
    std::string cmd = std::string("\"") + PAI_CLI_PATH + "\" " + args + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.err = ss.str();
    return r;
}

void write_toy_jsonl(const fs::path& path) {
    std::ofstream out(path);
    out << R"({"id":"P1","year":2010,"countries":["A","B"],"authors":2})" << "\n"
        << R"({"id":"P2","year":2011,"countries":["A","C"],"authors":3})" << "\n"
        << R"({"id":"P3","year":2012,"countries":["B","C"],"authors":2})" << "\n"
        << R"({"id":"P4","year":2013,"countries":["A"],"authors":2})" << "\n";
}

// Weighted 5-country corpus: one 2-country record per link.
void write_five_country_jsonl(const fs::path& path) {
    std::ofstream out(path);
    int id = 0;
    auto emit = [&](const char* a, const char* b, int copies) {
        for (int k = 0; k < copies; ++k)
            out << R"({"id":"R)" << id++ << R"(","year":2012,"countries":[")" << a << R"(",")"
                << b << R"("],"authors":2})" << "\n";
    };
    emit("A", "B", 3);
    emit("A", "C", 1);
    emit("A", "D", 2);
    emit("A", "E", 5);
    emit("B", "C", 1);
    emit("C", "E", 2);
    emit("D", "E", 1);
}

std::map<std::string, std::map<std::string, std::string>> read_grid(const fs::path& csv) {
    std::ifstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    auto header = pai::detail::split_csv_row(line);
    std::map<std::string, std::map<std::string, std::string>> grid;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = pai::detail::split_csv_row(line);
        for (std::size_t j = 1; j < fields.size(); ++j) grid[fields[0]][header[j]] = fields[j];
    }
    return grid;
}

std::string slurp(const fs::path& p) { return pai::read_file(p.string()); }

}  // namespace

TEST_CASE("cli ingest writes matrix, stats, and report for the toy corpus") {
    auto dir = scratch("ingest");
    write_toy_jsonl(dir / "toy.jsonl");
    auto r = run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                              (dir / "out").string());
    REQUIRE(r.exit_code == 0);

    auto grid = read_grid(dir / "out" / "matrix.csv");
    CHECK(grid.size() == 3);
    CHECK(grid["A"]["B"] == "1");
    CHECK(grid["A"]["A"] == "0");

    std::ifstream stats(dir / "out" / "stats.csv");
    std::string line, a_row;
    while (std::getline(stats, line))
        if (line.rfind("A,", 0) == 0) a_row = line;
    CHECK(a_row.rfind("A,3,2,1,", 0) == 0);

    auto report = nlohmann::json::parse(slurp(dir / "out" / "ingest_report.json"));
    CHECK(report["records_read"] == 4);
    CHECK(report["records_rejected"] == 0);
    CHECK(fs::exists(dir / "out" / "config.effective"));
}

TEST_CASE("cli ingest applies aliases and warns on a high rejection rate") {
    auto dir = scratch("aliases");
    {
        std::ofstream out(dir / "recs.jsonl");
        out << R"({"id":"P1","countries":["United States","Spain"]})" << "\n"
            << R"({"id":"P2","countries":["Atlantis"]})" << "\n"
            << R"({"id":"P3","countries":["Mu"]})" << "\n";
        std::ofstream al(dir / "aliases.csv");
        al << "United States,USA\nSpain,ESP\n";
    }
    auto r = run_cli(dir, "ingest --input " + (dir / "recs.jsonl").string() + " --aliases " +
                              (dir / "aliases.csv").string() + " --out " +
                              (dir / "out").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
    auto report = nlohmann::json::parse(slurp(dir / "out" / "ingest_report.json"));
    CHECK(report["records_rejected"] == 2);
    CHECK(report["unmapped_names"]["Atlantis"] == 1);
    auto grid = read_grid(dir / "out" / "matrix.csv");
    CHECK(grid.count("USA") == 1);
    CHECK(grid.count("ESP") == 1);
}

TEST_CASE("cli ingest of an empty file exits 0 with a warning") {
    auto dir = scratch("empty");
    std::ofstream(dir / "none.jsonl").close();
    auto r = run_cli(dir, "ingest --input " + (dir / "none.jsonl").string() + " --out " +
                              (dir / "out").string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "matrix.csv"));
}

TEST_CASE("cli ingest of an unreadable path fails without partial output") {
    auto dir = scratch("unreadable");
    auto r = run_cli(dir, "ingest --input " + (dir / "missing.jsonl").string() + " --out " +
                              (dir / "out").string());
    CHECK(r.exit_code != 0);
    CHECK(r.err.rfind("error:", 0) == 0);
    CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("cli pai writes the expected raw values for m1, m2, m7") {
    auto dir = scratch("pai");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    auto r = run_cli(dir, "pai --input " + (dir / "ingest").string() + " --methods m1,m2,m7 " +
                              "--out " + (dir / "pai").string());
    REQUIRE(r.exit_code == 0);

    CHECK(read_grid(dir / "pai" / "m1.csv")["A"]["B"] == "0.75");
    CHECK(read_grid(dir / "pai" / "m2.csv")["A"]["B"] == "1.5");
    CHECK(read_grid(dir / "pai" / "m7.csv")["A"]["B"] == "1");
    // default normalization writes npai for m1/m2 but not the exempt m7
    CHECK(fs::exists(dir / "pai" / "m2_npai.csv"));
    CHECK_FALSE(fs::exists(dir / "pai" / "m7_npai.csv"));
}

TEST_CASE("cli pai m3 converges to the neutral diagonal on the toy matrix") {
    auto dir = scratch("m3");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    auto r = run_cli(dir, "pai --input " + (dir / "ingest").string() +
                              " --methods m3 --tolerance 0 --out " + (dir / "pai").string());
    REQUIRE(r.exit_code == 0);

    std::ifstream diag(dir / "pai" / "m3_diagonal.csv");
    std::string line;
    std::getline(diag, line);  // header
    int rows = 0;
    while (std::getline(diag, line)) {
        CHECK(line.substr(line.find(',') + 1) == "1");
        ++rows;
    }
    CHECK(rows == 3);

    auto report = nlohmann::json::parse(slurp(dir / "pai" / "m3_fixpoint.json"));
    CHECK(report["converged"] == true);

    auto grid = read_grid(dir / "pai" / "m3.csv");
    for (const auto& [row, cells] : grid)
        for (const auto& [col, value] : cells) CHECK(value == "1");
}

TEST_CASE("cli pai fails when m4 is requested without a stats file") {
    auto dir = scratch("nostats");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    fs::remove(dir / "ingest" / "stats.csv");
    auto r = run_cli(dir, "pai --input " + (dir / "ingest").string() + " --methods m4 --out " +
                              (dir / "pai").string());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("error: config:") != std::string::npos);
    CHECK(r.err.find("stats.csv") != std::string::npos);
}

TEST_CASE("cli pai refuses to converge silently but obeys --allow-nonconverged") {
    auto dir = scratch("nonconv");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    auto strict = run_cli(dir, "pai --input " + (dir / "ingest").string() +
                                   " --methods m3 --tolerance 0 --max-iter 2 --out " +
                                   (dir / "strict").string());
    CHECK(strict.exit_code != 0);
    CHECK(fs::exists(dir / "strict" / "m3_fixpoint.json"));  // files still written
    auto report = nlohmann::json::parse(slurp(dir / "strict" / "m3_fixpoint.json"));
    CHECK(report["converged"] == false);

    auto lax = run_cli(dir, "pai --input " + (dir / "ingest").string() +
                                " --methods m3 --tolerance 0 --max-iter 2 --allow-nonconverged " +
                                "--out " + (dir / "lax").string());
    CHECK(lax.exit_code == 0);
}

TEST_CASE("cli compare reproduces the m2-m7 rank identity through the file pipeline") {
    auto dir = scratch("compare");
    write_five_country_jsonl(dir / "five.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "five.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "pai --input " + (dir / "ingest").string() + " --methods m2,m7 --out " +
                             (dir / "pai").string())
                .exit_code == 0);
    auto r = run_cli(dir, "compare --input " + (dir / "pai").string() + " --target A --out " +
                              (dir / "cmp").string());
    REQUIRE(r.exit_code == 0);

    std::string csv = slurp(dir / "cmp" / "compare_A.csv");
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    auto fields = pai::detail::split_csv_row(row);
    CHECK(fields[0] == "m2-m7");
    CHECK(fields[2] == "1");  // spearman
    CHECK(fields[3] == "4");  // n_used
}

TEST_CASE("cli compare rejects an unknown target and lists the codes") {
    auto dir = scratch("badtarget");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "pai --input " + (dir / "ingest").string() + " --methods m2 --out " +
                             (dir / "pai").string())
                .exit_code == 0);
    auto r = run_cli(dir, "compare --input " + (dir / "pai").string() + " --target ZZ --out " +
                              (dir / "cmp").string());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("unknown target 'ZZ'") != std::string::npos);
    CHECK(r.err.find("A, B, C") != std::string::npos);
}

TEST_CASE("cli rank writes the toy ranking with shared rank 1") {
    auto dir = scratch("rank");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "pai --input " + (dir / "ingest").string() + " --methods m2 --out " +
                             (dir / "pai").string())
                .exit_code == 0);
    auto r = run_cli(dir, "rank --input " + (dir / "pai").string() +
                              " --target A --top-n 2 --methods m2 --out " +
                              (dir / "rank").string());
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(dir / "rank" / "rank_A_m2.csv") ==
          "rank,partner,afi,pai\n1,B,0.5,1.5\n1,C,0.5,1.5\n");
}

TEST_CASE("cli size-corr reports undefined cells when partners are scarce") {
    auto dir = scratch("sizecorr");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "pai --input " + (dir / "ingest").string() + " --methods m2 --out " +
                             (dir / "pai").string())
                .exit_code == 0);
    auto r = run_cli(dir, "size-corr --input " + (dir / "pai").string() + " --target A --out " +
                              (dir / "sc").string());
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(dir / "sc" / "size_corr_A.csv");
    CHECK(csv.find("insufficient overlap") != std::string::npos);
}

TEST_CASE("cli config file values are overridden by flags") {
    auto dir = scratch("config");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "ingest").string())
                .exit_code == 0);
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "normalize=linear\nmethods=m2\n";
    }
    auto r = run_cli(dir, "pai --input " + (dir / "ingest").string() + " --config " +
                              (dir / "run.cfg").string() + " --normalize power --out " +
                              (dir / "pai").string());
    REQUIRE(r.exit_code == 0);
    auto sidecar = nlohmann::json::parse(slurp(dir / "pai" / "m2_npai.json"));
    CHECK(sidecar["normalized"] == "power");  // flag beat the config file
    CHECK_FALSE(fs::exists(dir / "pai" / "m1.csv"));  // config file methods applied
    std::string effective = slurp(dir / "pai" / "config.effective");
    CHECK(effective.find("power") != std::string::npos);
}

TEST_CASE("cli ingest runs are byte-deterministic") {
    auto dir = scratch("determinism");
    write_toy_jsonl(dir / "toy.jsonl");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "out").string())
                .exit_code == 0);
    std::map<std::string, std::string> first;
    for (const auto& e : fs::directory_iterator(dir / "out"))
        first[e.path().filename().string()] = slurp(e.path());
    fs::remove_all(dir / "out");
    REQUIRE(run_cli(dir, "ingest --input " + (dir / "toy.jsonl").string() + " --out " +
                             (dir / "out").string())
                .exit_code == 0);
    for (const auto& e : fs::directory_iterator(dir / "out"))
        CHECK(first.at(e.path().filename().string()) == slurp(e.path()));
    CHECK(first.size() == 5);  // matrix.csv/.json, stats.csv, report, config.effective
}
