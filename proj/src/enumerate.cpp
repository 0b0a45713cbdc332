// Bounded-enumeration planning and the nested-loop enumerator.
#include <algorithm>

#include "bcheck/eval.hpp"
#include "bcheck/setops.hpp"

namespace bcheck {

namespace {

void flatten_conjuncts(const Pred& p, std::vector<const Pred*>& out) {
    if (p.kind == PredKind::And) {
        flatten_conjuncts(*p.preds[0], out);
        flatten_conjuncts(*p.preds[1], out);
    } else {
        out.push_back(&p);
    }
}

bool names_available(const std::set<std::string>& free, const std::set<std::string>& available,
                     const std::vector<std::string>& bound) {
    for (const auto& n : free) {
        if (available.count(n)) continue;
        if (std::find(bound.begin(), bound.end(), n) != bound.end()) continue;
        return false;
    }
    return true;
}

}  // namespace

EnumPlan plan_enum(const std::vector<std::string>& vars, const Pred& where,
                   const std::set<std::string>& available) {
    std::vector<const Pred*> conjuncts;
    flatten_conjuncts(where, conjuncts);

    EnumPlan plan;
    std::vector<bool> used(conjuncts.size(), false);
    std::vector<std::string> bound;

    auto is_unbound_var = [&](const Expr& e) {
        return e.kind == ExprKind::Name &&
               std::find(vars.begin(), vars.end(), e.text) != vars.end() &&
               std::find(bound.begin(), bound.end(), e.text) == bound.end();
    };

    bool progress = true;
    while (progress && bound.size() < vars.size()) {
        progress = false;
        for (size_t i = 0; i < conjuncts.size(); ++i) {
            if (used[i]) continue;
            const Pred& c = *conjuncts[i];
            bool member = c.kind == PredKind::Member;
            bool equals = c.kind == PredKind::Eq;
            if (!member && !equals) continue;
            const Expr& lhs = *c.exprs[0];
            const Expr& rhs = *c.exprs[1];
            if (!is_unbound_var(lhs)) continue;
            std::set<std::string> free;
            collect_free_names(rhs, free);
            if (!names_available(free, available, bound)) continue;

            EnumPlan::Generator gen;
            gen.var = lhs.text;
            gen.source = &rhs;
            gen.equals = equals;
            // invariant when the source mentions none of the earlier
            // variables: it can be evaluated once per enumeration
            gen.invariant = true;
            for (const auto& b : bound)
                if (free.count(b)) gen.invariant = false;
            plan.generators.push_back(std::move(gen));
            used[i] = true;
            bound.push_back(lhs.text);
            progress = true;
            break;
        }
    }

    for (const auto& v : vars) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end())
            throw EvalError(EvalErrorKind::UnboundedVariable,
                            "variable '" + v +
                                "' has no generator: bind it with a conjunct of shape '" + v +
                                " : E' or '" + v + " = E'",
                            where.loc, v);
    }

    for (size_t i = 0; i < conjuncts.size(); ++i)
        if (!used[i]) plan.filters.push_back(conjuncts[i]);
    return plan;
}

namespace {

struct Enumerator {
    const EnumPlan& plan;
    EvalCtx& ctx;
    const std::function<bool(EvalCtx&)>& yield;
    // lazily memoized sources of invariant member-of generators
    std::vector<Value> cache;
    std::vector<bool> cached;

    Enumerator(const EnumPlan& p, EvalCtx& c, const std::function<bool(EvalCtx&)>& y)
        : plan(p), ctx(c), yield(y), cache(p.generators.size()), cached(p.generators.size(), false) {}

    bool run(size_t gi) {
        if (gi == plan.generators.size()) {
            for (const Pred* f : plan.filters)
                if (!eval_pred(*f, ctx)) return true;  // binding rejected, keep going
            return yield(ctx);
        }
        const auto& gen = plan.generators[gi];
        if (gen.equals) {
            ctx.push(gen.var, eval_expr(*gen.source, ctx));
            bool keep = run(gi + 1);
            ctx.pop();
            return keep;
        }
        const Value* source;
        Value scratch;
        if (gen.invariant) {
            if (!cached[gi]) {
                cache[gi] = eval_expr(*gen.source, ctx);
                cached[gi] = true;
            }
            source = &cache[gi];
        } else {
            scratch = eval_expr(*gen.source, ctx);
            source = &scratch;
        }
        for (const Value& elem : source->as_set()) {
            ctx.push(gen.var, elem);
            bool keep = run(gi + 1);
            ctx.pop();
            if (!keep) return false;
        }
        return true;
    }
};

}  // namespace

bool enumerate(const EnumPlan& plan, EvalCtx& ctx, const std::function<bool(EvalCtx&)>& yield) {
    Enumerator en(plan, ctx, yield);
    return en.run(0);
}

// ---------------------------------------------------------------------------
// plan attachment

namespace {

void plan_binder(const std::vector<std::string>& vars, Pred& body, std::unique_ptr<EnumPlan>& slot,
                 std::set<std::string>& available, bool forall, SourceLoc loc) {
    const Pred* plan_source = &body;
    if (forall) {
        if (body.kind != PredKind::Implies)
            throw EvalError(EvalErrorKind::UnboundedVariable,
                            "universally quantified variables must be bounded by an "
                            "implication: !(x).(x : E & ... => P)",
                            loc, vars.empty() ? "" : vars[0]);
        plan_source = body.preds[0].get();
    }
    slot = std::make_unique<EnumPlan>(plan_enum(vars, *plan_source, available));

    std::vector<std::string> added;
    for (const auto& v : vars)
        if (available.insert(v).second) added.push_back(v);
    attach_plans(body, available);
    for (const auto& v : added) available.erase(v);
}

}  // namespace

void attach_plans(Pred& p, std::set<std::string>& available) {
    if (p.kind == PredKind::Forall || p.kind == PredKind::Exists) {
        plan_binder(p.bound_vars, *p.preds[0], p.plan, available, p.kind == PredKind::Forall,
                    p.loc);
        return;
    }
    for (auto& q : p.preds) attach_plans(*q, available);
    for (auto& e : p.exprs) attach_plans(*e, available);
}

void attach_plans(Expr& e, std::set<std::string>& available) {
    if (e.kind == ExprKind::SetCompr || e.kind == ExprKind::Lambda) {
        e.plan = std::make_unique<EnumPlan>(plan_enum(e.bound_vars, *e.body, available));
        std::vector<std::string> added;
        for (const auto& v : e.bound_vars)
            if (available.insert(v).second) added.push_back(v);
        attach_plans(*e.body, available);
        for (auto& a : e.args) attach_plans(*a, available);
        for (const auto& v : added) available.erase(v);
        return;
    }
    for (auto& a : e.args) attach_plans(*a, available);
    if (e.body) attach_plans(*e.body, available);
}

}  // namespace bcheck
