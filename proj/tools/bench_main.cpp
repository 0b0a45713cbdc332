// Benchmark: serial reference runner vs the OpenMP worker pool on a
// generated project, with a byte-identical report cross-check.
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "bcheck/report.hpp"
#include "fixture_gen.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct TimedRun {
    double load_ms = 0;
    double check_ms = 0;
    bcheck::RunOutcome outcome;
    std::string csv_bytes;
    std::string json_bytes;
};

TimedRun run_once(const bcheck::ProjectConfig& config, int jobs, bool serial) {
    TimedRun t;
    auto t0 = Clock::now();

    std::vector<bcheck::DataDecl> decls;
    for (const auto& f : config.decl_files) {
        auto parsed = bcheck::parse_decl_file(bcheck::testing::read_file(f));
        decls.insert(decls.end(), std::make_move_iterator(parsed.begin()),
                     std::make_move_iterator(parsed.end()));
    }
    std::vector<bcheck::RuleFile> files;
    for (const auto& f : config.rule_files)
        files.push_back(bcheck::parse_rule_file(bcheck::testing::read_file(f),
                                                f.filename().string()));
    bcheck::EnvBuild env = bcheck::build_env(decls, config.data_dir, config.dialect);
    if (!env.issues.empty()) throw std::runtime_error("generated project has data issues");
    auto prepared = bcheck::prepare_rules(std::move(files), env.types);
    t.load_ms = ms_since(t0);

    bcheck::RunConfig rc;
    rc.max_findings = config.max_findings;
    rc.set_limit = config.set_limit;
    rc.jobs = jobs;
    auto t1 = Clock::now();
    t.outcome = serial ? bcheck::run_all_serial(prepared, env.values, rc)
                       : bcheck::run_all_parallel(prepared, env.values, rc);
    t.check_ms = ms_since(t1);

    bcheck::Report report;
    report.version = bcheck::kToolVersion;
    report.config_digest = "bench";
    report.results = t.outcome.results;
    report.summary.run = t.outcome.summary;
    t.csv_bytes = bcheck::emit_csv(report);
    t.json_bytes = bcheck::emit_json(report);
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bcheck-bench — serial vs OpenMP rule evaluation on a generated project"};
    int rows = 2000;
    int rules = 200;
    int jobs = 0;
    unsigned seed = 20240101;
    std::string keep_dir;
    app.add_option("--rows", rows, "data rows (25 columns each)");
    app.add_option("--rules", rules, "number of generated rules");
    app.add_option("--jobs", jobs, "parallel worker count (0 = hardware)");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--keep", keep_dir, "write the project here and keep it");
    CLI11_PARSE(app, argc, argv);

    namespace fs = std::filesystem;
    fs::path dir = keep_dir.empty()
                       ? fs::temp_directory_path() / ("bcheck_bench_" + std::to_string(::getpid()))
                       : fs::path(keep_dir);
    bcheck::testing::ScaleSpec spec;
    spec.rows = rows;
    spec.rules = rules;
    spec.seed = seed;
    bcheck::testing::write_scale_project(dir, spec);

    bcheck::ProjectConfig config = bcheck::load_project(dir / "bcheck.cfg");

    std::printf("project: %d rows x 25 columns (%d cells), %d rules\n", rows, rows * 25, rules);
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = 1;
#endif
    int par_jobs = jobs > 0 ? jobs : hw;

    TimedRun serial = run_once(config, 1, true);
    std::printf("serial    : load %8.1f ms   check %8.1f ms   (pass %d fail %d error %d, %lld findings)\n",
                serial.load_ms, serial.check_ms, serial.outcome.summary.pass,
                serial.outcome.summary.fail, serial.outcome.summary.error,
                static_cast<long long>(serial.outcome.summary.findings));

    TimedRun parallel = run_once(config, par_jobs, false);
    std::printf("omp x%-4d : load %8.1f ms   check %8.1f ms   speedup %.2fx\n", par_jobs,
                parallel.load_ms, parallel.check_ms,
                parallel.check_ms > 0 ? serial.check_ms / parallel.check_ms : 0.0);

    bool same = serial.csv_bytes == parallel.csv_bytes && serial.json_bytes == parallel.json_bytes;
    std::printf("reports   : %s\n", same ? "byte-identical" : "MISMATCH");

    if (keep_dir.empty()) fs::remove_all(dir);
    return same ? 0 : 1;
}
