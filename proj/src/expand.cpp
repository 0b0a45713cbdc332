// Definition expansion: definitions are name -> AST macros shared by all
// rules of a project. Expansion is innermost-first with a cycle check, and
// refuses substitutions that a binder at the use site would capture.
#include <algorithm>
#include <functional>
#include <map>

#include "bcheck/rules.hpp"

namespace bcheck {

namespace {

struct Subst {
    const std::map<std::string, const Definition*>& defs;
    const std::set<std::string>& data_names;
    std::vector<std::string> scope;

    bool in_scope(const std::string& name) const {
        return std::find(scope.begin(), scope.end(), name) != scope.end();
    }

    void check_capture(const Definition& def, SourceLoc use, const std::set<std::string>& free) {
        for (const auto& name : free) {
            if (in_scope(name))
                throw SemanticError("expanding definition '" + def.name + "' here would capture '" +
                                        name + "', which is bound at the use site",
                                    use);
        }
    }

    void expr(ExprPtr& e) {
        if (e->kind == ExprKind::Name && !in_scope(e->text)) {
            auto hit = defs.find(e->text);
            if (hit != defs.end()) {
                const Definition& def = *hit->second;
                if (def.is_pred())
                    throw SemanticError(
                        "definition '" + def.name + "' is a predicate, used as an expression",
                        e->loc);
                std::set<std::string> free;
                collect_free_names(*def.expr, free);
                check_capture(def, e->loc, free);
                e = def.expr->clone();
            }
            return;
        }
        size_t pushed = 0;
        if (e->kind == ExprKind::SetCompr || e->kind == ExprKind::Lambda) {
            for (const auto& v : e->bound_vars) {
                scope.push_back(v);
                ++pushed;
            }
        }
        for (auto& a : e->args) expr(a);
        if (e->body) pred(e->body);
        scope.resize(scope.size() - pushed);
    }

    void pred(PredPtr& p) {
        if (p->kind == PredKind::DefRef) {
            if (in_scope(p->text))
                throw SemanticError("'" + p->text + "' is a bound variable, not a predicate",
                                    p->loc);
            auto hit = defs.find(p->text);
            if (hit == defs.end())
                throw SemanticError("unknown definition '" + p->text + "'", p->loc);
            const Definition& def = *hit->second;
            if (!def.is_pred())
                throw SemanticError(
                    "definition '" + def.name + "' is an expression, used as a predicate", p->loc);
            std::set<std::string> free;
            collect_free_names(*def.pred, free);
            check_capture(def, p->loc, free);
            p = def.pred->clone();
            return;
        }
        size_t pushed = 0;
        if (p->kind == PredKind::Forall || p->kind == PredKind::Exists) {
            for (const auto& v : p->bound_vars) {
                scope.push_back(v);
                ++pushed;
            }
        }
        for (auto& q : p->preds) pred(q);
        for (auto& e2 : p->exprs) expr(e2);
        scope.resize(scope.size() - pushed);
    }
};

void check_def_names(const Definition& def, const std::set<std::string>& data_names) {
    std::set<std::string> free;
    if (def.is_pred())
        collect_free_names(*def.pred, free);
    else
        collect_free_names(*def.expr, free);
    for (const auto& name : free)
        if (!data_names.count(name))
            throw SemanticError("unknown name '" + name + "' in definition '" + def.name + "'",
                                def.loc);
}

}  // namespace

std::vector<Definition> expand_definitions(std::vector<Definition> defs,
                                           const std::set<std::string>& data_names) {
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < defs.size(); ++i) {
        if (data_names.count(defs[i].name))
            throw SemanticError(
                "definition '" + defs[i].name + "' collides with a declared data item",
                defs[i].loc);
        if (!index.emplace(defs[i].name, i).second)
            throw SemanticError("duplicate definition '" + defs[i].name + "'", defs[i].loc);
    }

    // 0 = untouched, 1 = in progress (on the DFS path), 2 = fully expanded
    std::vector<int> state(defs.size(), 0);
    std::vector<std::string> chain;

    std::function<void(size_t)> expand_one = [&](size_t i) {
        if (state[i] == 2) return;
        if (state[i] == 1) {
            std::string cycle;
            for (const auto& n : chain) cycle += n + " -> ";
            throw SemanticError("cyclic definitions: " + cycle + defs[i].name, defs[i].loc);
        }
        state[i] = 1;
        chain.push_back(defs[i].name);

        std::set<std::string> free;
        if (defs[i].is_pred())
            collect_free_names(*defs[i].pred, free);
        else
            collect_free_names(*defs[i].expr, free);
        for (const auto& name : free) {
            auto hit = index.find(name);
            if (hit != index.end()) expand_one(hit->second);
        }

        std::map<std::string, const Definition*> ready;
        for (const auto& [n, j] : index)
            if (state[j] == 2) ready.emplace(n, &defs[j]);
        Subst subst{ready, data_names, {}};
        if (defs[i].is_pred())
            subst.pred(defs[i].pred);
        else
            subst.expr(defs[i].expr);

        check_def_names(defs[i], data_names);
        chain.pop_back();
        state[i] = 2;
    };
    for (size_t i = 0; i < defs.size(); ++i) expand_one(i);
    return defs;
}

void expand_rule(Rule& rule, const std::vector<Definition>& defs,
                 const std::set<std::string>& data_names) {
    std::map<std::string, const Definition*> by_name;
    for (const auto& d : defs) by_name.emplace(d.name, &d);
    for (auto& block : rule.blocks) {
        Subst subst{by_name, data_names, {}};
        // rule parameters are in scope for both predicates
        subst.scope = block.params;
        subst.pred(block.where);
        subst.pred(block.expected);
    }
}

std::vector<Rule> expand_defs(std::vector<Definition> defs, std::vector<Rule> rules,
                              const std::set<std::string>& data_names) {
    auto expanded = expand_definitions(std::move(defs), data_names);
    for (auto& r : rules) expand_rule(r, expanded, data_names);
    return rules;
}

}  // namespace bcheck
