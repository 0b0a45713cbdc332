// Rule runners: a serial reference implementation and an OpenMP worker pool.
// Rules are independent; results are assembled in declaration order, so the
// report is identical whichever runner produced it.
#ifdef _OPENMP
#include <omp.h>
#endif

#include "bcheck/rules.hpp"

namespace bcheck {

namespace {

RunSummary summarize(const std::vector<RuleResult>& results) {
    RunSummary s;
    s.rules = static_cast<int>(results.size());
    for (const auto& r : results) {
        switch (r.verdict) {
            case Verdict::Pass: ++s.pass; break;
            case Verdict::Fail: ++s.fail; break;
            case Verdict::Error: ++s.error; break;
        }
        s.findings += static_cast<int64_t>(r.findings.size());
        if (r.truncated) ++s.truncated;
    }
    return s;
}

}  // namespace

RunOutcome run_all_serial(const std::vector<PreparedRule>& rules, const GlobalEnv& env,
                          const RunConfig& cfg) {
    RunOutcome out;
    out.results.reserve(rules.size());
    for (const auto& rule : rules) out.results.push_back(check_rule(rule, env, cfg));
    out.summary = summarize(out.results);
    return out;
}

RunOutcome run_all_parallel(const std::vector<PreparedRule>& rules, const GlobalEnv& env,
                            const RunConfig& cfg) {
    RunOutcome out;
    out.results.resize(rules.size());
    const int64_t n = static_cast<int64_t>(rules.size());
#ifdef _OPENMP
    int jobs = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int64_t i = 0; i < n; ++i) out.results[i] = check_rule(rules[i], env, cfg);
#else
    for (int64_t i = 0; i < n; ++i) out.results[i] = check_rule(rules[i], env, cfg);
#endif
    out.summary = summarize(out.results);
    return out;
}

RunOutcome run_all(const std::vector<PreparedRule>& rules, const GlobalEnv& env,
                   const RunConfig& cfg) {
    if (cfg.jobs == 1) return run_all_serial(rules, env, cfg);
    return run_all_parallel(rules, env, cfg);
}

}  // namespace bcheck
