// Project configuration, pipeline orchestration and report emission.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bcheck/ingest.hpp"
#include "bcheck/rules.hpp"

namespace bcheck {

inline constexpr const char* kToolVersion = "0.1.0";

struct ProjectConfig {
    std::filesystem::path base_dir;  // config file's directory
    std::filesystem::path data_dir;  // resolved
    CsvDialect dialect;
    std::vector<std::filesystem::path> decl_files;  // resolved
    std::vector<std::filesystem::path> rule_files;  // resolved
    std::filesystem::path out_dir;                  // resolved
    std::vector<std::string> formats;               // subset of text,csv,json
    int64_t max_findings = 10'000;
    int jobs = 0;  // 0 = all hardware threads
    int64_t set_limit = kDefaultSetLimit;
};

// Loads the line-based `key = value` project file; relative paths resolve
// against the config file's directory. Throws ParseError (the location line
// is the config line number) and SemanticError for missing mandatory keys.
ProjectConfig load_project(const std::filesystem::path& config_path);

struct ReportSummaryCounters {
    RunSummary run;
    int64_t data_issues = 0;
};

struct Report {
    std::string version;
    std::string config_digest;  // content hash of config + all input files
    std::string started_at;     // serialized in the text format only
    std::vector<RuleResult> results;
    std::vector<DataIssue> data_issues;
    ReportSummaryCounters summary;
};

// Deterministic machine formats: identical inputs yield identical bytes.
std::string emit_text(const Report& report);
std::string emit_csv(const Report& report);
std::string emit_json(const Report& report);

struct RunOutput {
    std::optional<Report> report;
    int exit_code = 0;
    std::vector<std::string> diagnostics;          // for the error stream
    std::vector<std::filesystem::path> written;    // emitted report files
};

// Full pipeline: parse rules, build the environment, typecheck, run every
// rule, and emit the configured report formats into out_dir. Never throws;
// load failures produce exit code 2 plus diagnostics.
// Exit codes: 0 all rules PASS and no data issues; 1 at least one FAIL;
// 2 any ERROR verdict, data issue, or load failure.
RunOutput run_project(const ProjectConfig& config);

// Digest of the config text plus every declaration, rule and CSV file.
std::string project_digest(const ProjectConfig& config);

}  // namespace bcheck
