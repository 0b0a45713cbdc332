// Command-line entry point: replayable batch verification of a project.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcheck/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bcheck — checks tabular data sets against rules written in a "
                 "B-style mathematical language"};
    app.set_version_flag("--version", std::string("bcheck ") + bcheck::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> formats;
    int64_t max_ce = -1;
    int jobs = -1;
    std::string delimiter;

    CLI::App* check = app.add_subcommand("check", "run every rule of a project and emit reports");
    check->add_option("config", config_path, "project config file")->required();
    check->add_option("--out", out_dir, "output directory for reports (overrides config)");
    check->add_option("--format", formats, "report format: text, csv or json (repeatable)");
    check->add_option("--max-ce", max_ce, "max counterexamples kept per block");
    check->add_option("--jobs", jobs, "worker threads (0 = all hardware threads)");
    check->add_option("--delimiter", delimiter, "CSV delimiter character (or 'tab')");

    CLI11_PARSE(app, argc, argv);

    bcheck::ProjectConfig config;
    try {
        config = bcheck::load_project(config_path);
    } catch (const std::exception& e) {
        std::cerr << "bcheck: " << e.what() << "\n";
        return 2;
    }

    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!formats.empty()) {
        config.formats.clear();
        for (const auto& f : formats) {
            if (f != "text" && f != "csv" && f != "json") {
                std::cerr << "bcheck: unknown report format '" << f << "'\n";
                return 2;
            }
            if (std::find(config.formats.begin(), config.formats.end(), f) ==
                config.formats.end())
                config.formats.push_back(f);
        }
    }
    if (max_ce >= 0) config.max_findings = max_ce;
    if (jobs >= 0) config.jobs = jobs;
    if (!delimiter.empty()) {
        if (delimiter == "tab")
            config.dialect.delimiter = '\t';
        else if (delimiter.size() == 1)
            config.dialect.delimiter = delimiter[0];
        else {
            std::cerr << "bcheck: delimiter must be a single character or 'tab'\n";
            return 2;
        }
    }

    bcheck::RunOutput result = bcheck::run_project(config);
    for (const auto& d : result.diagnostics) std::cerr << "bcheck: " << d << "\n";

    if (result.report) {
        const auto& s = result.report->summary;
        std::cout << "rules: " << s.run.rules << "  pass: " << s.run.pass
                  << "  fail: " << s.run.fail << "  error: " << s.run.error
                  << "  findings: " << s.run.findings << "  data issues: " << s.data_issues
                  << "\n";
        for (const auto& f : result.written) std::cout << "wrote " << f.string() << "\n";
    }
    return result.exit_code;
}
