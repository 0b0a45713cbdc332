// Rule preparation and execution.
#include <chrono>

#include "bcheck/rules.hpp"

namespace bcheck {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Error: return "ERROR";
    }
    return "?";
}

std::vector<PreparedRule> prepare_rules(std::vector<RuleFile> files, const TypeEnv& types) {
    std::set<std::string> data_names;
    for (const auto& [name, type] : types) data_names.insert(name);

    std::vector<Definition> defs;
    std::vector<Rule> rules;
    std::set<std::string> rule_ids;
    for (auto& file : files) {
        for (auto& d : file.defs) defs.push_back(std::move(d));
        for (auto& r : file.rules) {
            if (!rule_ids.insert(r.id).second)
                throw SemanticError("duplicate rule id '" + r.id + "' (already defined in "
                                    "another file)",
                                    r.loc);
            rules.push_back(std::move(r));
        }
    }

    auto expanded_defs = expand_definitions(std::move(defs), data_names);
    std::set<std::string> global_names = data_names;
    for (const auto& d : expanded_defs) global_names.insert(d.name);

    std::vector<PreparedRule> prepared;
    prepared.reserve(rules.size());
    for (auto& rule : rules) {
        PreparedRule pr;
        for (const auto& block : rule.blocks)
            for (const auto& param : block.params)
                if (global_names.count(param))
                    throw SemanticError("parameter '" + param +
                                            "' of rule '" + rule.id +
                                            "' shadows a data item or definition",
                                        block.loc);

        expand_rule(rule, expanded_defs, data_names);

        for (auto& block : rule.blocks) {
            TypeChecker tc(types);
            tc.push_params(block.params);
            tc.check(*block.where);
            tc.check(*block.expected);
            tc.finalize(*block.where);
            tc.finalize(*block.expected);
            tc.pop_params();
        }

        // enumeration plans; an unbounded variable is a per-rule defect that
        // must surface as an ERROR verdict, not kill the project
        try {
            for (auto& block : rule.blocks) {
                block.plan = std::make_unique<EnumPlan>(
                    plan_enum(block.params, *block.where, data_names));
                std::set<std::string> avail = data_names;
                for (const auto& param : block.params) avail.insert(param);
                attach_plans(*block.where, avail);
                attach_plans(*block.expected, avail);
            }
        } catch (const EvalError& e) {
            pr.load_error = RuleError{e.kind(), e.message(), e.loc(), e.witness()};
        }
        pr.rule = std::move(rule);
        prepared.push_back(std::move(pr));
    }
    return prepared;
}

std::string format_message(const std::string& tmpl, const std::vector<std::string>& rendered) {
    std::string out;
    out.reserve(tmpl.size());
    for (size_t i = 0; i < tmpl.size(); ++i) {
        char c = tmpl[i];
        if (c != '%' || i + 1 >= tmpl.size()) {
            out.push_back(c);
            continue;
        }
        char next = tmpl[i + 1];
        if (next == '%') {
            out.push_back('%');
            ++i;
        } else if (next >= '1' && next <= '9' &&
                   static_cast<size_t>(next - '1') < rendered.size()) {
            out += rendered[static_cast<size_t>(next - '1')];
            ++i;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

RuleResult check_rule(const PreparedRule& pr, const GlobalEnv& env, const RunConfig& cfg) {
    RuleResult result;
    result.rule_id = pr.rule.id;
    auto t0 = std::chrono::steady_clock::now();

    if (pr.load_error) {
        result.verdict = Verdict::Error;
        result.error = pr.load_error;
        return result;
    }

    try {
        for (size_t bi = 0; bi < pr.rule.blocks.size(); ++bi) {
            const CxBlock& block = pr.rule.blocks[bi];
            int64_t block_findings = 0;
            EvalCtx ctx(env, cfg.set_limit);
            enumerate(*block.plan, ctx, [&](EvalCtx& c) {
                if (eval_pred(*block.expected, c)) return true;
                Finding f;
                f.rule_id = pr.rule.id;
                f.block = static_cast<int>(bi) + 1;
                std::vector<std::string> message_values;
                message_values.reserve(block.params.size());
                for (const auto& param : block.params) {
                    const Value* v = c.lookup(param);
                    message_values.push_back(render_value(*v, RenderMode::Message));
                    f.witness.emplace_back(param, render_value(*v, RenderMode::Machine));
                }
                f.message = format_message(block.message, message_values);
                result.findings.push_back(std::move(f));
                if (++block_findings >= cfg.max_findings) {
                    result.truncated = true;
                    return false;  // hard stop for this block
                }
                return true;
            });
        }
    } catch (const EvalError& e) {
        result.error = RuleError{e.kind(), e.message(), e.loc(), e.witness()};
    } catch (const std::exception& e) {
        result.error = RuleError{EvalErrorKind::ResourceLimit,
                                 std::string("internal failure: ") + e.what(), pr.rule.loc, ""};
    }

    if (result.error)
        result.verdict = Verdict::Error;
    else
        result.verdict = result.findings.empty() ? Verdict::Pass : Verdict::Fail;

    auto t1 = std::chrono::steady_clock::now();
    result.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return result;
}

}  // namespace bcheck
