#include <doctest.h>

#include <filesystem>
#include <random>

#include "bcheck/report.hpp"
#include "fixture_gen.hpp"

using namespace bcheck;
namespace fs = std::filesystem;
using bcheck::testing::read_file;
using bcheck::testing::write_file;

namespace {

struct TmpDir {
    fs::path path;
    explicit TmpDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("bcheck_report_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TmpDir() { fs::remove_all(path); }
};

// one CSV, one INT column, one rule checking cells against a threshold
void write_tiny_project(const fs::path& dir, const std::vector<int>& cells, int threshold) {
    std::string csv = "c\n";
    for (int v : cells) csv += std::to_string(v) + "\n";
    write_file(dir / "data" / "T.csv", csv);
    write_file(dir / "decls.bdecl", "DATA T!c : seq(INT) SOURCE \"T.csv\" COLUMN \"c\"\n");
    write_file(dir / "rules.brules",
               "RULE threshold\n  COUNTEREXAMPLE \"row %1 holds %2\"\n  ANY i, v\n"
               "  WHERE i : dom(T!c) & v = T!c(i)\n  EXPECTED v <= " +
                   std::to_string(threshold) + "\n  END\nEND\n");
    write_file(dir / "bcheck.cfg",
               "data_dir = data\ndecls = decls.bdecl\nrules = rules.brules\nout_dir = out\n"
               "formats = text,csv,json\n");
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
    TmpDir dir("cfg1");
    write_file(dir.path / "p.cfg", "decls = d.bdecl\nrules = r.brules\n");
    auto cfg = load_project(dir.path / "p.cfg");
    CHECK(cfg.dialect.delimiter == ';');
    CHECK(cfg.max_findings == 10000);
    CHECK(cfg.set_limit == 1000000);
    CHECK(cfg.formats == std::vector<std::string>{"text", "csv"});
    CHECK(cfg.decl_files.size() == 1);
    // relative paths resolve against the config directory
    CHECK(cfg.decl_files[0].parent_path() == dir.path);
}

TEST_CASE("missing mandatory keys are reported") {
    TmpDir dir("cfg2");
    write_file(dir.path / "p.cfg", "decls = d.bdecl\n");
    CHECK_THROWS_AS(load_project(dir.path / "p.cfg"), SemanticError);
    write_file(dir.path / "q.cfg", "rules = r.brules\n");
    CHECK_THROWS_AS(load_project(dir.path / "q.cfg"), SemanticError);
}

TEST_CASE("config parse errors carry the line number") {
    TmpDir dir("cfg3");
    write_file(dir.path / "p.cfg", "decls = d.bdecl\nnot a key value pair\n");
    try {
        load_project(dir.path / "p.cfg");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.loc().line == 2);
    }
}

TEST_CASE("an all-pass project exits 0 and reports no findings") {
    TmpDir dir("run1");
    write_tiny_project(dir.path, {1, 2, 3}, 10);
    auto cfg = load_project(dir.path / "bcheck.cfg");
    auto out = run_project(cfg);
    CHECK(out.exit_code == 0);
    REQUIRE(out.report.has_value());
    CHECK(out.report->summary.run.pass == 1);
    CHECK(out.report->summary.run.findings == 0);
    CHECK(fs::exists(dir.path / "out" / "report.csv"));
    CHECK(fs::exists(dir.path / "out" / "report.json"));
    CHECK(fs::exists(dir.path / "out" / "report.txt"));
}

TEST_CASE("a planted violation exits 1 with exactly its findings") {
    TmpDir dir("run2");
    write_tiny_project(dir.path, {1, 99, 3, 98}, 10);
    auto cfg = load_project(dir.path / "bcheck.cfg");
    auto out = run_project(cfg);
    CHECK(out.exit_code == 1);
    REQUIRE(out.report.has_value());
    REQUIRE(out.report->results.size() == 1);
    const auto& findings = out.report->results[0].findings;
    // brute force: rows 2 and 4 exceed the threshold
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].message == "row 2 holds 99");
    CHECK(findings[1].message == "row 4 holds 98");
}

TEST_CASE("a WD-broken rule exits 2") {
    TmpDir dir("run3");
    write_tiny_project(dir.path, {1}, 10);
    write_file(dir.path / "rules.brules",
               "RULE outside\n  COUNTEREXAMPLE \"%1\"\n  ANY v\n  WHERE v = T!c(99)\n"
               "  EXPECTED v = v\n  END\nEND\n");
    auto out = run_project(load_project(dir.path / "bcheck.cfg"));
    CHECK(out.exit_code == 2);
    REQUIRE(out.report.has_value());
    CHECK(out.report->results[0].verdict == Verdict::Error);
}

TEST_CASE("data issues block the run and exit 2") {
    TmpDir dir("run4");
    write_tiny_project(dir.path, {1}, 10);
    write_file(dir.path / "data" / "T.csv", "c\n1\nbad\n");
    auto out = run_project(load_project(dir.path / "bcheck.cfg"));
    CHECK(out.exit_code == 2);
    REQUIRE(out.report.has_value());
    CHECK(out.report->results.empty());
    REQUIRE(out.report->data_issues.size() == 1);
    CHECK(out.report->data_issues[0].row == 2);
}

TEST_CASE("a missing input file is a diagnosed load failure") {
    TmpDir dir("run5");
    write_file(dir.path / "bcheck.cfg", "decls = no.bdecl\nrules = no.brules\n");
    auto out = run_project(load_project(dir.path / "bcheck.cfg"));
    CHECK(out.exit_code == 2);
    CHECK(!out.diagnostics.empty());
}

TEST_CASE("machine reports are byte-identical across reruns") {
    TmpDir dir("det1");
    write_tiny_project(dir.path, {5, 20, 7, 30, 9}, 10);
    auto cfg = load_project(dir.path / "bcheck.cfg");

    auto first = run_project(cfg);
    std::string csv1 = read_file(dir.path / "out" / "report.csv");
    std::string json1 = read_file(dir.path / "out" / "report.json");
    auto second = run_project(cfg);
    std::string csv2 = read_file(dir.path / "out" / "report.csv");
    std::string json2 = read_file(dir.path / "out" / "report.json");

    CHECK(first.exit_code == second.exit_code);
    CHECK(csv1 == csv2);
    CHECK(json1 == json2);
    CHECK(csv1.find("row 2 holds 20") != std::string::npos);
}

TEST_CASE("the csv report has one row per finding plus comment lines") {
    TmpDir dir("csvrep");
    write_tiny_project(dir.path, {99, 98, 97}, 10);
    auto out = run_project(load_project(dir.path / "bcheck.cfg"));
    REQUIRE(out.report.has_value());
    std::string csv = read_file(dir.path / "out" / "report.csv");

    int64_t findings = 0;
    size_t data_rows = 0;
    bool saw_header = false;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("#", 0) == 0) continue;
        if (line.rfind("rule_id;", 0) == 0) {
            saw_header = true;
            continue;
        }
        if (!line.empty()) ++data_rows;
    }
    for (const auto& r : out.report->results) findings += r.findings.size();
    CHECK(saw_header);
    CHECK(data_rows == static_cast<size_t>(findings));
    CHECK(findings == 3);
}

TEST_CASE("csv cells quote messages containing the separator") {
    Report report;
    report.version = kToolVersion;
    report.config_digest = "d";
    RuleResult r;
    r.rule_id = "q";
    r.verdict = Verdict::Fail;
    Finding f;
    f.rule_id = "q";
    f.block = 1;
    f.message = "contains ; and \"quotes\"";
    f.witness = {{"x", "\"a;b\""}};
    r.findings.push_back(f);
    report.results.push_back(r);
    report.summary.run.rules = 1;
    report.summary.run.fail = 1;
    report.summary.run.findings = 1;

    std::string csv = emit_csv(report);
    CHECK(csv.find("\"contains ; and \"\"quotes\"\"\"") != std::string::npos);
    std::string json = emit_json(report);
    CHECK(json.find("contains ; and") != std::string::npos);
}

TEST_CASE("emit on an empty report is header and summary only") {
    Report report;
    report.version = kToolVersion;
    report.config_digest = "x";
    std::string csv = emit_csv(report);
    std::istringstream lines(csv);
    std::string line;
    int content_rows = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line.rfind("rule_id;", 0) != 0) ++content_rows;
    CHECK(content_rows == 0);
    CHECK(emit_csv(report) == emit_csv(report));
    CHECK(emit_json(report) == emit_json(report));
}

TEST_CASE("the config digest changes when any input byte changes") {
    TmpDir dir("dig1");
    write_tiny_project(dir.path, {1, 2}, 10);
    auto cfg = load_project(dir.path / "bcheck.cfg");
    std::string d1 = project_digest(cfg);
    CHECK(d1.size() == 64);
    CHECK(d1 == project_digest(cfg));
    write_file(dir.path / "data" / "T.csv", "c\n1\n3\n");
    CHECK(project_digest(cfg) != d1);
}

TEST_CASE("property: exit code 0 exactly when all rules pass and data is clean") {
    std::mt19937 rng(5150);
    TmpDir dir("soundness");
    for (int round = 0; round < 20; ++round) {
        int n = 8;
        std::vector<int> cells;
        bool corrupt = rng() % 4 == 0;
        bool violate = rng() % 2 == 0;
        for (int i = 0; i < n; ++i) cells.push_back(static_cast<int>(rng() % 10));
        if (violate) cells[rng() % n] = 50;
        write_tiny_project(dir.path, cells, 10);
        if (corrupt) {
            std::string csv = "c\n";
            for (int i = 0; i < n; ++i)
                csv += (i == 3 ? std::string("oops") : std::to_string(cells[i])) + "\n";
            write_file(dir.path / "data" / "T.csv", csv);
        }
        auto out = run_project(load_project(dir.path / "bcheck.cfg"));
        REQUIRE(out.report.has_value());
        bool all_pass = out.report->summary.run.fail == 0 && out.report->summary.run.error == 0;
        bool clean = out.report->summary.data_issues == 0;
        if (corrupt) {
            CHECK(out.exit_code == 2);
        } else if (violate) {
            CHECK(out.exit_code == 1);
        } else {
            CHECK(out.exit_code == 0);
        }
        CHECK((out.exit_code == 0) == (all_pass && clean));
    }
}
