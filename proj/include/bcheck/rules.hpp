// Verification rules: parsing of RULE / COUNTEREXAMPLE files, definition
// expansion, and rule execution against an environment.
#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcheck/ast.hpp"
#include "bcheck/eval.hpp"
#include "bcheck/typecheck.hpp"

namespace bcheck {

struct Definition {
    std::string name;
    PredPtr pred;  // exactly one of pred / expr is set
    ExprPtr expr;
    SourceLoc loc;
    bool is_pred() const { return pred != nullptr; }
};

struct CxBlock {
    std::string message;  // template with %1..%9 placeholders, %% escape
    std::vector<std::string> params;
    PredPtr where;
    PredPtr expected;
    SourceLoc loc;
    std::unique_ptr<EnumPlan> plan;  // built by prepare_rules
};

struct Rule {
    std::string id;
    std::vector<CxBlock> blocks;
    SourceLoc loc;
};

struct RuleFile {
    std::string name;  // diagnostic label, usually the file name
    std::vector<Definition> defs;
    std::vector<Rule> rules;
};

// Parses one rule file. Validates placeholder indices against the parameter
// count and rejects duplicate rule ids within the file.
RuleFile parse_rule_file(const std::string& text, const std::string& name = "");

// Expands the definitions against each other (throws SemanticError on
// cycles and on unknown names in definition bodies).
std::vector<Definition> expand_definitions(std::vector<Definition> defs,
                                           const std::set<std::string>& data_names);

// Replaces every definition reference in the rule by the definition body.
// After expansion only data names and bound variables remain.
void expand_rule(Rule& rule, const std::vector<Definition>& defs,
                 const std::set<std::string>& data_names);

// Spec-shaped convenience wrapper over the two functions above.
std::vector<Rule> expand_defs(std::vector<Definition> defs, std::vector<Rule> rules,
                              const std::set<std::string>& data_names);

struct Finding {
    std::string rule_id;
    int block = 0;  // 1-based
    std::string message;
    // parameter name -> machine-rendered value, in declaration order
    std::vector<std::pair<std::string, std::string>> witness;
};

enum class Verdict { Pass, Fail, Error };
const char* verdict_name(Verdict v);

struct RuleError {
    EvalErrorKind kind;
    std::string message;
    SourceLoc loc;
    std::string witness;
};

struct RuleResult {
    std::string rule_id;
    Verdict verdict = Verdict::Pass;
    std::vector<Finding> findings;
    std::optional<RuleError> error;
    bool truncated = false;
    double elapsed_ms = 0.0;
};

// A rule ready to run: expanded, typechecked and planned. Rules whose plan
// failed at load time (unbounded variables) carry load_error and run to an
// ERROR verdict without touching data.
struct PreparedRule {
    Rule rule;
    std::optional<RuleError> load_error;
};

// Merges rule files, checks id/definition uniqueness, expands definitions,
// typechecks against the data declarations and attaches enumeration plans.
// Throws SemanticError on project-level defects (duplicate ids, cycles,
// unknown or ill-typed names).
std::vector<PreparedRule> prepare_rules(std::vector<RuleFile> files, const TypeEnv& types);

// Instantiates %1..%9 with the rendered parameter values; %% renders %.
std::string format_message(const std::string& tmpl, const std::vector<std::string>& rendered);

struct RunConfig {
    int64_t max_findings = 10'000;  // per block, hard stop
    int64_t set_limit = kDefaultSetLimit;
    int jobs = 1;  // 1 = serial reference; 0 = all hardware threads
};

RuleResult check_rule(const PreparedRule& rule, const GlobalEnv& env, const RunConfig& cfg);

struct RunSummary {
    int rules = 0;
    int pass = 0;
    int fail = 0;
    int error = 0;
    int64_t findings = 0;
    int truncated = 0;
};

struct RunOutcome {
    std::vector<RuleResult> results;  // rule-declaration order
    RunSummary summary;
};

// Serial reference runner and the OpenMP worker-pool runner. Both produce
// identical results; run_all dispatches on cfg.jobs.
RunOutcome run_all_serial(const std::vector<PreparedRule>& rules, const GlobalEnv& env,
                          const RunConfig& cfg);
RunOutcome run_all_parallel(const std::vector<PreparedRule>& rules, const GlobalEnv& env,
                            const RunConfig& cfg);
RunOutcome run_all(const std::vector<PreparedRule>& rules, const GlobalEnv& env,
                   const RunConfig& cfg);

}  // namespace bcheck
