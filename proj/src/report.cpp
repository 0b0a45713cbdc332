#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "bcheck/report.hpp"
#include "bcheck/sha256.hpp"

namespace bcheck {

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void digest_chunk(Sha256& h, const std::string& label, const std::string& bytes) {
    h.update(label);
    h.update("\n");
    std::string len = std::to_string(bytes.size());
    h.update(len);
    h.update("\n");
    h.update(bytes);
}

std::string now_utc_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// RFC 4180-style quoting for the report csv (always ';'-delimited)
std::string csv_cell(const std::string& raw) {
    bool need_quotes = raw.find_first_of(";\"\r\n") != std::string::npos;
    if (!need_quotes) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string fmt_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", ms);
    return buf;
}

}  // namespace

std::string project_digest(const ProjectConfig& config) {
    Sha256 h;
    // the digest covers the config text plus every declaration, rule and
    // CSV file, so a changed digest explains a changed report
    for (const auto& f : config.decl_files) digest_chunk(h, "decl:" + f.filename().string(), slurp(f));
    for (const auto& f : config.rule_files) digest_chunk(h, "rule:" + f.filename().string(), slurp(f));

    std::vector<std::filesystem::path> csvs;
    for (const auto& f : config.decl_files) {
        for (const auto& d : parse_decl_file(slurp(f)))
            csvs.push_back((config.data_dir / d.source_rel).lexically_normal());
    }
    std::sort(csvs.begin(), csvs.end());
    csvs.erase(std::unique(csvs.begin(), csvs.end()), csvs.end());
    for (const auto& f : csvs) digest_chunk(h, "data:" + f.filename().string(), slurp(f));
    return h.hex_digest();
}

std::string emit_text(const Report& report) {
    std::ostringstream out;
    out << "bcheck " << report.version << "\n";
    out << "started: " << report.started_at << "\n";
    out << "config digest: " << report.config_digest << "\n";
    out << "\n";
    const auto& s = report.summary;
    out << "rules: " << s.run.rules << "  pass: " << s.run.pass << "  fail: " << s.run.fail
        << "  error: " << s.run.error << "\n";
    out << "findings: " << s.run.findings << "  truncated rules: " << s.run.truncated
        << "  data issues: " << s.data_issues << "\n";

    if (!report.data_issues.empty()) {
        out << "\nDATA ISSUES\n";
        for (const auto& issue : report.data_issues) {
            out << "  " << issue.name << " row " << issue.row << ": "
                << data_issue_reason_name(issue.reason);
            if (!issue.cell.empty()) out << " (" << issue.cell << ")";
            out << "\n";
        }
    }

    for (const auto& r : report.results) {
        out << "\nRULE " << r.rule_id << ": " << verdict_name(r.verdict);
        if (!r.findings.empty()) out << " (" << r.findings.size() << " finding(s))";
        if (r.truncated) out << " [truncated]";
        out << " [" << fmt_ms(r.elapsed_ms) << " ms]\n";
        for (const auto& f : r.findings) out << "  [" << f.block << "] " << f.message << "\n";
        if (r.error) {
            out << "  error: " << eval_error_kind_name(r.error->kind) << " at "
                << loc_str(r.error->loc) << ": " << r.error->message;
            if (!r.error->witness.empty()) out << " (witness: " << r.error->witness << ")";
            out << "\n";
        }
    }
    return std::move(out).str();
}

std::string emit_csv(const Report& report) {
    std::ostringstream out;
    const auto& s = report.summary;
    out << "# bcheck " << report.version << "\n";
    out << "# config_digest: " << report.config_digest << "\n";
    out << "# rules: " << s.run.rules << " pass: " << s.run.pass << " fail: " << s.run.fail
        << " error: " << s.run.error << "\n";
    out << "# findings: " << s.run.findings << " truncated_rules: " << s.run.truncated
        << " data_issues: " << s.data_issues << "\n";
    for (const auto& issue : report.data_issues) {
        out << "# data_issue;" << csv_cell(issue.name) << ";" << issue.row << ";"
            << data_issue_reason_name(issue.reason) << ";" << csv_cell(issue.cell) << "\n";
    }
    out << "rule_id;block;message";
    for (int i = 1; i <= 9; ++i) out << ";param_" << i;
    out << "\n";
    for (const auto& r : report.results) {
        for (const auto& f : r.findings) {
            out << csv_cell(f.rule_id) << ";" << f.block << ";" << csv_cell(f.message);
            for (size_t i = 0; i < 9; ++i) {
                out << ";";
                if (i < f.witness.size()) out << csv_cell(f.witness[i].second);
            }
            out << "\n";
        }
    }
    return std::move(out).str();
}

std::string emit_json(const Report& report) {
    nlohmann::json j;
    j["version"] = report.version;
    j["config_digest"] = report.config_digest;

    nlohmann::json issues = nlohmann::json::array();
    for (const auto& issue : report.data_issues) {
        issues.push_back({{"name", issue.name},
                          {"row", issue.row},
                          {"cell", issue.cell},
                          {"reason", data_issue_reason_name(issue.reason)}});
    }
    j["data_issues"] = std::move(issues);

    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : report.results) {
        nlohmann::json jr;
        jr["rule_id"] = r.rule_id;
        jr["verdict"] = verdict_name(r.verdict);
        jr["truncated"] = r.truncated;
        nlohmann::json findings = nlohmann::json::array();
        for (const auto& f : r.findings) {
            nlohmann::json jf;
            jf["block"] = f.block;
            jf["message"] = f.message;
            nlohmann::json witness = nlohmann::json::array();
            for (const auto& [param, value] : f.witness)
                witness.push_back({{"param", param}, {"value", value}});
            jf["witness"] = std::move(witness);
            findings.push_back(std::move(jf));
        }
        jr["findings"] = std::move(findings);
        if (r.error) {
            jr["error"] = {{"kind", eval_error_kind_name(r.error->kind)},
                           {"message", r.error->message},
                           {"line", r.error->loc.line},
                           {"column", r.error->loc.column},
                           {"witness", r.error->witness}};
        }
        results.push_back(std::move(jr));
    }
    j["results"] = std::move(results);

    j["summary"] = {{"rules", report.summary.run.rules},
                    {"pass", report.summary.run.pass},
                    {"fail", report.summary.run.fail},
                    {"error", report.summary.run.error},
                    {"findings", report.summary.run.findings},
                    {"truncated_rules", report.summary.run.truncated},
                    {"data_issues", report.summary.data_issues}};
    return j.dump(2) + "\n";
}

RunOutput run_project(const ProjectConfig& config) {
    RunOutput out;
    Report report;
    report.version = kToolVersion;
    report.started_at = now_utc_iso8601();

    try {
        report.config_digest = project_digest(config);

        // declarations
        std::vector<DataDecl> decls;
        for (const auto& f : config.decl_files) {
            try {
                auto parsed = parse_decl_file(slurp(f));
                decls.insert(decls.end(), std::make_move_iterator(parsed.begin()),
                             std::make_move_iterator(parsed.end()));
            } catch (const Error& e) {
                throw SemanticError(f.filename().string() + ": " + e.message(), e.loc());
            }
        }

        // rule files
        std::vector<RuleFile> files;
        for (const auto& f : config.rule_files) {
            try {
                files.push_back(parse_rule_file(slurp(f), f.filename().string()));
            } catch (const Error& e) {
                throw SemanticError(f.filename().string() + ": " + e.message(), e.loc());
            }
        }

        // data
        EnvBuild env = build_env(decls, config.data_dir, config.dialect);
        report.data_issues = env.issues;
        report.summary.data_issues = static_cast<int64_t>(env.issues.size());

        if (env.issues.empty()) {
            auto prepared = prepare_rules(std::move(files), env.types);
            RunConfig rc;
            rc.max_findings = config.max_findings;
            rc.set_limit = config.set_limit;
            rc.jobs = config.jobs;
            RunOutcome outcome = run_all(prepared, env.values, rc);
            report.results = std::move(outcome.results);
            report.summary.run = outcome.summary;
        } else {
            // data issues block the run; report them and stop
            for (const auto& issue : env.issues)
                out.diagnostics.push_back(std::string("data issue: ") + issue.name + " row " +
                                          std::to_string(issue.row) + ": " +
                                          data_issue_reason_name(issue.reason));
        }
    } catch (const Error& e) {
        out.diagnostics.push_back(e.what());
        out.exit_code = 2;
        return out;
    } catch (const std::exception& e) {
        out.diagnostics.push_back(e.what());
        out.exit_code = 2;
        return out;
    }

    // exit code: 2 dominates 1 dominates 0
    if (report.summary.run.error > 0 || report.summary.data_issues > 0)
        out.exit_code = 2;
    else if (report.summary.run.fail > 0)
        out.exit_code = 1;
    else
        out.exit_code = 0;

    // emission
    try {
        std::filesystem::create_directories(config.out_dir);
        for (const auto& format : config.formats) {
            std::string bytes;
            std::filesystem::path file = config.out_dir;
            if (format == "text") {
                bytes = emit_text(report);
                file /= "report.txt";
            } else if (format == "csv") {
                bytes = emit_csv(report);
                file /= "report.csv";
            } else {
                bytes = emit_json(report);
                file /= "report.json";
            }
            std::ofstream f(file, std::ios::binary);
            if (!f) throw IoError("cannot write " + file.string());
            f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!f) throw IoError("write failure: " + file.string());
            out.written.push_back(file);
        }
    } catch (const std::exception& e) {
        out.diagnostics.push_back(e.what());
        out.exit_code = 2;
    }

    out.report = std::move(report);
    return out;
}

}  // namespace bcheck
