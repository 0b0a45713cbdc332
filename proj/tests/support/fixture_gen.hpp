// Deterministic generator of synthetic projects: CSV data, declarations,
// rule files and a project config. Shared by the scale benchmark and the
// acceptance suite.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace bcheck::testing {

struct ScaleSpec {
    int rows = 2000;
    int rules = 200;
    unsigned seed = 20240101;
    // 25 columns fixed: 20 INT, 2 BOOL, 3 STRING
    int planted_sentinels = 37;  // rows of c04 holding the planted -1
};

// Writes data/T.csv (25 columns x rows cells), decls.bdecl, rules.brules
// and bcheck.cfg under dir. The rule mix contains per-row checks,
// cross-column joins, category-count rules and quantified pair rules; all
// pass except one planted rule with exactly `planted_sentinels` findings.
void write_scale_project(const std::filesystem::path& dir, const ScaleSpec& spec);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace bcheck::testing
