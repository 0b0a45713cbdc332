#include "bcheck/ast.hpp"

namespace bcheck {

ExprPtr mk_expr(ExprKind k, SourceLoc l) { return std::make_unique<Expr>(k, l); }
PredPtr mk_pred(PredKind k, SourceLoc l) { return std::make_unique<Pred>(k, l); }

ExprPtr Expr::clone() const {
    auto out = mk_expr(kind, loc);
    out->int_val = int_val;
    out->bool_val = bool_val;
    out->text = text;
    out->bound_vars = bound_vars;
    out->args.reserve(args.size());
    for (const auto& a : args) out->args.push_back(a->clone());
    if (body) out->body = body->clone();
    return out;
}

PredPtr Pred::clone() const {
    auto out = mk_pred(kind, loc);
    out->text = text;
    out->bound_vars = bound_vars;
    out->preds.reserve(preds.size());
    for (const auto& p : preds) out->preds.push_back(p->clone());
    out->exprs.reserve(exprs.size());
    for (const auto& e : exprs) out->exprs.push_back(e->clone());
    return out;
}

bool ast_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.int_val != b.int_val || a.bool_val != b.bool_val ||
        a.text != b.text || a.bound_vars != b.bound_vars || a.args.size() != b.args.size())
        return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!ast_equal(*a.args[i], *b.args[i])) return false;
    if (static_cast<bool>(a.body) != static_cast<bool>(b.body)) return false;
    if (a.body && !ast_equal(*a.body, *b.body)) return false;
    return true;
}

bool ast_equal(const Pred& a, const Pred& b) {
    if (a.kind != b.kind || a.text != b.text || a.bound_vars != b.bound_vars ||
        a.preds.size() != b.preds.size() || a.exprs.size() != b.exprs.size())
        return false;
    for (size_t i = 0; i < a.preds.size(); ++i)
        if (!ast_equal(*a.preds[i], *b.preds[i])) return false;
    for (size_t i = 0; i < a.exprs.size(); ++i)
        if (!ast_equal(*a.exprs[i], *b.exprs[i])) return false;
    return true;
}

namespace {

void free_expr(const Expr& e, std::vector<std::string>& scope, std::set<std::string>& out);
void free_pred(const Pred& p, std::vector<std::string>& scope, std::set<std::string>& out);

bool in_scope(const std::vector<std::string>& scope, const std::string& name) {
    for (const auto& s : scope)
        if (s == name) return true;
    return false;
}

void free_expr(const Expr& e, std::vector<std::string>& scope, std::set<std::string>& out) {
    if (e.kind == ExprKind::Name) {
        if (!in_scope(scope, e.text)) out.insert(e.text);
        return;
    }
    size_t pushed = 0;
    if (e.kind == ExprKind::SetCompr || e.kind == ExprKind::Lambda) {
        for (const auto& v : e.bound_vars) {
            scope.push_back(v);
            ++pushed;
        }
    }
    for (const auto& a : e.args) free_expr(*a, scope, out);
    if (e.body) free_pred(*e.body, scope, out);
    scope.resize(scope.size() - pushed);
}

void free_pred(const Pred& p, std::vector<std::string>& scope, std::set<std::string>& out) {
    if (p.kind == PredKind::DefRef) {
        if (!in_scope(scope, p.text)) out.insert(p.text);
        return;
    }
    size_t pushed = 0;
    if (p.kind == PredKind::Forall || p.kind == PredKind::Exists) {
        for (const auto& v : p.bound_vars) {
            scope.push_back(v);
            ++pushed;
        }
    }
    for (const auto& q : p.preds) free_pred(*q, scope, out);
    for (const auto& e : p.exprs) free_expr(*e, scope, out);
    scope.resize(scope.size() - pushed);
}

}  // namespace

void collect_free_names(const Expr& e, std::set<std::string>& out) {
    std::vector<std::string> scope;
    free_expr(e, scope, out);
}

void collect_free_names(const Pred& p, std::set<std::string>& out) {
    std::vector<std::string> scope;
    free_pred(p, scope, out);
}

void walk(const Expr& e, const std::function<void(const Expr&)>& on_expr,
          const std::function<void(const Pred&)>& on_pred) {
    on_expr(e);
    for (const auto& a : e.args) walk(*a, on_expr, on_pred);
    if (e.body) walk(*e.body, on_expr, on_pred);
}

void walk(const Pred& p, const std::function<void(const Expr&)>& on_expr,
          const std::function<void(const Pred&)>& on_pred) {
    on_pred(p);
    for (const auto& q : p.preds) walk(*q, on_expr, on_pred);
    for (const auto& e : p.exprs) walk(*e, on_expr, on_pred);
}

}  // namespace bcheck
