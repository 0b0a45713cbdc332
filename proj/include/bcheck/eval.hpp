// Evaluation of typed expressions and predicates over an environment, and
// exhaustive enumeration of the bindings of bounded variables.
#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcheck/ast.hpp"
#include "bcheck/value.hpp"

namespace bcheck {

using GlobalEnv = std::unordered_map<std::string, Value>;

inline constexpr int64_t kDefaultSetLimit = 1'000'000;

// Immutable global frame plus a stack of lexical bindings; innermost wins.
// One EvalCtx per rule evaluation; never shared across workers.
struct EvalCtx {
    const GlobalEnv* globals = nullptr;
    int64_t set_limit = kDefaultSetLimit;

    struct Binding {
        const std::string* name;
        Value value;
    };
    std::vector<Binding> locals;

    explicit EvalCtx(const GlobalEnv& g, int64_t limit = kDefaultSetLimit)
        : globals(&g), set_limit(limit) {}

    const Value* lookup(const std::string& name) const {
        for (auto it = locals.rbegin(); it != locals.rend(); ++it)
            if (*it->name == name) return &it->value;
        auto hit = globals->find(name);
        return hit == globals->end() ? nullptr : &hit->second;
    }

    void push(const std::string& name, Value v) { locals.push_back(Binding{&name, std::move(v)}); }
    void pop() { locals.pop_back(); }
};

// Standard semantics; conjunction and disjunction short-circuit left to
// right. Throws EvalError for well-definedness violations.
Value eval_expr(const Expr& e, EvalCtx& ctx);
bool eval_pred(const Pred& p, EvalCtx& ctx);

// Decomposes `where` into generators (one per variable, of shape `v : E` or
// `v = E`) plus residual filters. `available` lists the names generators may
// mention besides earlier variables. Throws EvalError(UnboundedVariable).
EnumPlan plan_enum(const std::vector<std::string>& vars, const Pred& where,
                   const std::set<std::string>& available);

// Runs the nested-loop enumeration; calls `yield` for every binding that
// satisfies all filters, with the variables pushed on ctx. A false return
// from yield stops the enumeration early; enumerate then returns false.
bool enumerate(const EnumPlan& plan, EvalCtx& ctx, const std::function<bool(EvalCtx&)>& yield);

// Builds and attaches enumeration plans for every binder in the AST
// (quantifiers, comprehensions, lambdas). `available` holds the global
// names. Throws EvalError(UnboundedVariable) for unplannable binders.
void attach_plans(Pred& p, std::set<std::string>& available);
void attach_plans(Expr& e, std::set<std::string>& available);

}  // namespace bcheck
