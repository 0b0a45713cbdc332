#include <algorithm>
#include <fstream>
#include <sstream>

#include "bcheck/report.hpp"

namespace bcheck {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        std::string t = strip(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

int64_t parse_count(const std::string& value, const char* key, int line) {
    try {
        size_t used = 0;
        int64_t v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("invalid number for '") + key + "': " + value,
                         SourceLoc{line, 1});
    }
}

}  // namespace

ProjectConfig load_project(const std::filesystem::path& config_path) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open project config: " + config_path.string());

    ProjectConfig cfg;
    cfg.base_dir = config_path.has_parent_path() ? config_path.parent_path()
                                                 : std::filesystem::path(".");
    cfg.data_dir = cfg.base_dir;
    cfg.out_dir = cfg.base_dir;
    cfg.formats = {"text", "csv"};

    auto resolve = [&](const std::string& rel) { return cfg.base_dir / rel; };

    std::string raw;
    int line = 0;
    bool formats_set = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = strip(raw);
        if (text.empty() || text[0] == '#') continue;
        size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", SourceLoc{line, 1});
        std::string key = strip(text.substr(0, eq));
        std::string value = strip(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("expected 'key = value'", SourceLoc{line, 1});

        if (key == "data_dir") {
            cfg.data_dir = resolve(value);
        } else if (key == "decls") {
            cfg.decl_files.push_back(resolve(value));
        } else if (key == "rules") {
            cfg.rule_files.push_back(resolve(value));
        } else if (key == "out_dir") {
            cfg.out_dir = resolve(value);
        } else if (key == "delimiter") {
            if (value == "tab")
                cfg.dialect.delimiter = '\t';
            else if (value.size() == 1)
                cfg.dialect.delimiter = value[0];
            else
                throw ParseError("delimiter must be a single character or 'tab'",
                                 SourceLoc{line, 1});
        } else if (key == "formats") {
            cfg.formats.clear();
            for (const auto& f : split_csv_list(value)) {
                if (f != "text" && f != "csv" && f != "json")
                    throw ParseError("unknown report format '" + f + "'", SourceLoc{line, 1});
                if (std::find(cfg.formats.begin(), cfg.formats.end(), f) == cfg.formats.end())
                    cfg.formats.push_back(f);
            }
            formats_set = true;
        } else if (key == "max_findings") {
            cfg.max_findings = parse_count(value, "max_findings", line);
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(parse_count(value, "jobs", line));
        } else if (key == "set_limit") {
            cfg.set_limit = parse_count(value, "set_limit", line);
        } else {
            throw ParseError("unknown config key '" + key + "'", SourceLoc{line, 1});
        }
    }

    if (cfg.decl_files.empty())
        throw SemanticError("project config is missing the mandatory 'decls' key", SourceLoc{});
    if (cfg.rule_files.empty())
        throw SemanticError("project config is missing the mandatory 'rules' key", SourceLoc{});
    if (formats_set && cfg.formats.empty())
        throw SemanticError("'formats' must list at least one of text, csv, json", SourceLoc{});
    return cfg;
}

}  // namespace bcheck
