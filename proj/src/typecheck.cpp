#include "bcheck/typecheck.hpp"

#include <cassert>

namespace bcheck {

struct TypeChecker::Impl {
    // Union-find arena of type terms. A Var node with parent -1 is an
    // unresolved type variable.
    struct Node {
        enum class K { Var, Int, Bool, Str, Pair, Set };
        K k = K::Var;
        int a = -1, b = -1;
        int parent = -1;
    };

    std::vector<Node> nodes;
    std::vector<std::map<std::string, int>> scopes;

    explicit Impl(const TypeEnv& globals) {
        scopes.emplace_back();
        for (const auto& [name, type] : globals) scopes[0][name] = from_btype(type);
    }

    int fresh() {
        nodes.emplace_back();
        return static_cast<int>(nodes.size()) - 1;
    }

    int mk(Node::K k, int a = -1, int b = -1) {
        nodes.push_back(Node{k, a, b, -1});
        return static_cast<int>(nodes.size()) - 1;
    }

    int find(int i) {
        while (nodes[i].parent != -1) i = nodes[i].parent;
        return i;
    }

    int from_btype(const BTypePtr& t) {
        switch (t->kind) {
            case BType::Kind::Int: return mk(Node::K::Int);
            case BType::Kind::Bool: return mk(Node::K::Bool);
            case BType::Kind::String: return mk(Node::K::Str);
            case BType::Kind::Pair: return mk(Node::K::Pair, from_btype(t->a), from_btype(t->b));
            case BType::Kind::Set: return mk(Node::K::Set, from_btype(t->a));
        }
        return fresh();
    }

    BTypePtr to_btype(int i) {
        i = find(i);
        const Node& n = nodes[i];
        switch (n.k) {
            case Node::K::Var: return t_int();  // unconstrained: empty-set element
            case Node::K::Int: return t_int();
            case Node::K::Bool: return t_bool();
            case Node::K::Str: return t_string();
            case Node::K::Pair: return t_pair(to_btype(n.a), to_btype(n.b));
            case Node::K::Set: return t_set(to_btype(n.a));
        }
        return t_int();
    }

    std::string str(int i) {
        i = find(i);
        const Node& n = nodes[i];
        switch (n.k) {
            case Node::K::Var: return "?";
            case Node::K::Int: return "INT";
            case Node::K::Bool: return "BOOL";
            case Node::K::Str: return "STRING";
            case Node::K::Pair: return "(" + str(n.a) + "*" + str(n.b) + ")";
            case Node::K::Set: return "POW(" + str(n.a) + ")";
        }
        return "?";
    }

    bool occurs(int var, int t) {
        t = find(t);
        if (t == var) return true;
        const Node& n = nodes[t];
        if (n.a != -1 && occurs(var, n.a)) return true;
        if (n.b != -1 && occurs(var, n.b)) return true;
        return false;
    }

    void unify(int x, int y, SourceLoc loc) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (nodes[x].k == Node::K::Var) {
            if (occurs(x, y)) throw SemanticError("type mismatch: recursive type", loc);
            nodes[x].parent = y;
            return;
        }
        if (nodes[y].k == Node::K::Var) {
            if (occurs(y, x)) throw SemanticError("type mismatch: recursive type", loc);
            nodes[y].parent = x;
            return;
        }
        if (nodes[x].k != nodes[y].k)
            throw SemanticError("type mismatch: " + str(x) + " vs " + str(y), loc);
        int xa = nodes[x].a, xb = nodes[x].b;
        int ya = nodes[y].a, yb = nodes[y].b;
        nodes[y].parent = x;
        if (xa != -1) unify(xa, ya, loc);
        if (xb != -1) unify(xb, yb, loc);
    }

    void unify_described(int x, int y, SourceLoc loc, const char* what) {
        int rx = find(x), ry = find(y);
        if (nodes[rx].k != Node::K::Var && nodes[ry].k != Node::K::Var &&
            nodes[rx].k != nodes[ry].k)
            throw SemanticError(std::string(what) + ": " + str(rx) + " vs " + str(ry), loc);
        unify(x, y, loc);
    }

    int lookup(const std::string& name, SourceLoc loc) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto hit = it->find(name);
            if (hit != it->end()) return hit->second;
        }
        throw SemanticError("unknown name '" + name + "'", loc);
    }

    void push_scope(const std::vector<std::string>& names) {
        scopes.emplace_back();
        for (const auto& n : names) scopes.back()[n] = fresh();
    }

    void pop_scope() { scopes.pop_back(); }

    Node::K rep_kind(int i) { return nodes[find(i)].k; }

    // left-nested tuple type for a binder's variable list
    int tuple_of(const std::vector<std::string>& vars) {
        int t = lookup(vars[0], SourceLoc{});
        for (size_t i = 1; i < vars.size(); ++i)
            t = mk(Node::K::Pair, t, lookup(vars[i], SourceLoc{}));
        return t;
    }

    int int_node() { return mk(Node::K::Int); }

    int check_expr(Expr& e) {
        int t = check_expr_inner(e);
        e.tid = t;
        return t;
    }

    int check_expr_inner(Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLit: return mk(Node::K::Int);
            case ExprKind::StrLit: return mk(Node::K::Str);
            case ExprKind::BoolLit: return mk(Node::K::Bool);
            case ExprKind::Name: return lookup(e.text, e.loc);

            case ExprKind::Add:
            case ExprKind::Div:
            case ExprKind::Mod: {
                unify(check_expr(*e.args[0]), int_node(), e.args[0]->loc);
                unify(check_expr(*e.args[1]), int_node(), e.args[1]->loc);
                return int_node();
            }

            case ExprKind::Sub: {
                int tl = check_expr(*e.args[0]);
                int tr = check_expr(*e.args[1]);
                bool set_like = rep_kind(tl) == Node::K::Set || rep_kind(tr) == Node::K::Set;
                bool int_like = rep_kind(tl) == Node::K::Int || rep_kind(tr) == Node::K::Int;
                if (set_like) {
                    e.kind = ExprKind::SetMinus;
                    unify(tl, mk(Node::K::Set, fresh()), e.loc);
                    unify_described(tl, tr, e.loc, "type mismatch in set difference");
                    return tl;
                }
                if (int_like) {
                    unify(tl, int_node(), e.loc);
                    unify(tr, int_node(), e.loc);
                    return int_node();
                }
                throw SemanticError(
                    "ambiguous '-': operand types are unresolved (bind the operands with ':' "
                    "first)",
                    e.loc);
            }

            case ExprKind::Mul: {
                int tl = check_expr(*e.args[0]);
                int tr = check_expr(*e.args[1]);
                bool set_like = rep_kind(tl) == Node::K::Set || rep_kind(tr) == Node::K::Set;
                bool int_like = rep_kind(tl) == Node::K::Int || rep_kind(tr) == Node::K::Int;
                if (set_like) {
                    e.kind = ExprKind::Cartesian;
                    int a = fresh(), b = fresh();
                    unify(tl, mk(Node::K::Set, a), e.loc);
                    unify(tr, mk(Node::K::Set, b), e.loc);
                    return mk(Node::K::Set, mk(Node::K::Pair, a, b));
                }
                if (int_like) {
                    unify(tl, int_node(), e.loc);
                    unify(tr, int_node(), e.loc);
                    return int_node();
                }
                throw SemanticError(
                    "ambiguous '*': operand types are unresolved (bind the operands with ':' "
                    "first)",
                    e.loc);
            }

            case ExprKind::SetMinus: {
                int tl = check_expr(*e.args[0]);
                int tr = check_expr(*e.args[1]);
                unify(tl, mk(Node::K::Set, fresh()), e.loc);
                unify(tl, tr, e.loc);
                return tl;
            }
            case ExprKind::Cartesian: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, a), e.loc);
                unify(check_expr(*e.args[1]), mk(Node::K::Set, b), e.loc);
                return mk(Node::K::Set, mk(Node::K::Pair, a, b));
            }

            case ExprKind::Interval: {
                unify(check_expr(*e.args[0]), int_node(), e.args[0]->loc);
                unify(check_expr(*e.args[1]), int_node(), e.args[1]->loc);
                return mk(Node::K::Set, int_node());
            }

            case ExprKind::SetExt: {
                int elem = fresh();
                for (auto& a : e.args) unify(check_expr(*a), elem, a->loc);
                return mk(Node::K::Set, elem);
            }

            case ExprKind::SetCompr: {
                push_scope(e.bound_vars);
                check_pred(*e.body);
                int tuple = tuple_of(e.bound_vars);
                pop_scope();
                return mk(Node::K::Set, tuple);
            }

            case ExprKind::Lambda: {
                push_scope(e.bound_vars);
                check_pred(*e.body);
                int value = check_expr(*e.args[0]);
                int tuple = tuple_of(e.bound_vars);
                pop_scope();
                return mk(Node::K::Set, mk(Node::K::Pair, tuple, value));
            }

            case ExprKind::Maplet:
                return mk(Node::K::Pair, check_expr(*e.args[0]), check_expr(*e.args[1]));

            case ExprKind::Union:
            case ExprKind::Inter: {
                int tl = check_expr(*e.args[0]);
                int tr = check_expr(*e.args[1]);
                unify(tl, mk(Node::K::Set, fresh()), e.loc);
                unify_described(tl, tr, e.loc, "type mismatch in set operation");
                return tl;
            }

            case ExprKind::Card: {
                unify(check_expr(*e.args[0]), mk(Node::K::Set, fresh()), e.loc);
                return int_node();
            }
            case ExprKind::MinOf:
            case ExprKind::MaxOf: {
                unify(check_expr(*e.args[0]), mk(Node::K::Set, int_node()), e.loc);
                return int_node();
            }
            case ExprKind::Dom: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, a, b)), e.loc);
                return mk(Node::K::Set, a);
            }
            case ExprKind::Ran: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, a, b)), e.loc);
                return mk(Node::K::Set, b);
            }
            case ExprKind::SeqSize: {
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, int_node(), fresh())),
                      e.loc);
                return int_node();
            }
            case ExprKind::SeqFirst:
            case ExprKind::SeqLast: {
                int elem = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, int_node(), elem)),
                      e.loc);
                return elem;
            }
            case ExprKind::Prj1: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Pair, a, b), e.loc);
                return a;
            }
            case ExprKind::Prj2: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Pair, a, b), e.loc);
                return b;
            }
            case ExprKind::Inverse: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, a, b)), e.loc);
                return mk(Node::K::Set, mk(Node::K::Pair, b, a));
            }
            case ExprKind::Image: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, a, b)), e.loc);
                unify(check_expr(*e.args[1]), mk(Node::K::Set, a), e.args[1]->loc);
                return mk(Node::K::Set, b);
            }
            case ExprKind::Compose: {
                int a = fresh(), b = fresh(), c = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, mk(Node::K::Pair, a, b)), e.loc);
                unify(check_expr(*e.args[1]), mk(Node::K::Set, mk(Node::K::Pair, b, c)), e.loc);
                return mk(Node::K::Set, mk(Node::K::Pair, a, c));
            }
            case ExprKind::Override: {
                int rel = mk(Node::K::Set, mk(Node::K::Pair, fresh(), fresh()));
                unify(check_expr(*e.args[0]), rel, e.loc);
                unify(check_expr(*e.args[1]), rel, e.loc);
                return rel;
            }
            case ExprKind::DomRestrict:
            case ExprKind::DomSubtract: {
                int a = fresh(), b = fresh();
                unify(check_expr(*e.args[0]), mk(Node::K::Set, a), e.loc);
                int rel = mk(Node::K::Set, mk(Node::K::Pair, a, b));
                unify(check_expr(*e.args[1]), rel, e.loc);
                return rel;
            }
            case ExprKind::RanRestrict:
            case ExprKind::RanSubtract: {
                int a = fresh(), b = fresh();
                int rel = mk(Node::K::Set, mk(Node::K::Pair, a, b));
                unify(check_expr(*e.args[0]), rel, e.loc);
                unify(check_expr(*e.args[1]), mk(Node::K::Set, b), e.loc);
                return rel;
            }
            case ExprKind::Apply: {
                int a = fresh(), b = fresh();
                unify_described(check_expr(*e.args[0]),
                                mk(Node::K::Set, mk(Node::K::Pair, a, b)), e.loc,
                                "applied value is not a function");
                unify(check_expr(*e.args[1]), a, e.args[1]->loc);
                return b;
            }
        }
        throw SemanticError("unhandled expression kind", e.loc);
    }

    void check_pred(Pred& p) {
        switch (p.kind) {
            case PredKind::And:
            case PredKind::Or:
            case PredKind::Implies:
            case PredKind::Iff:
                check_pred(*p.preds[0]);
                check_pred(*p.preds[1]);
                return;
            case PredKind::Not: check_pred(*p.preds[0]); return;
            case PredKind::Forall:
            case PredKind::Exists:
                push_scope(p.bound_vars);
                check_pred(*p.preds[0]);
                pop_scope();
                return;
            case PredKind::Eq:
            case PredKind::Ne: {
                int tl = check_expr(*p.exprs[0]);
                int tr = check_expr(*p.exprs[1]);
                unify_described(tl, tr, p.loc, "type mismatch in comparison");
                return;
            }
            case PredKind::Lt:
            case PredKind::Le:
            case PredKind::Gt:
            case PredKind::Ge:
                unify(check_expr(*p.exprs[0]), int_node(), p.exprs[0]->loc);
                unify(check_expr(*p.exprs[1]), int_node(), p.exprs[1]->loc);
                return;
            case PredKind::Member:
            case PredKind::NotMember: {
                int te = check_expr(*p.exprs[0]);
                unify_described(check_expr(*p.exprs[1]), mk(Node::K::Set, te), p.loc,
                                "type mismatch in membership");
                return;
            }
            case PredKind::Subset:
            case PredKind::NotSubset: {
                int tl = check_expr(*p.exprs[0]);
                unify(tl, mk(Node::K::Set, fresh()), p.loc);
                unify_described(tl, check_expr(*p.exprs[1]), p.loc, "type mismatch in inclusion");
                return;
            }
            case PredKind::DefRef:
                throw SemanticError("unknown definition '" + p.text + "'", p.loc);
        }
    }

    void finalize_expr(Expr& e) {
        if (e.tid >= 0) e.type = to_btype(e.tid);
        for (auto& a : e.args) finalize_expr(*a);
        if (e.body) finalize_pred(*e.body);
    }

    void finalize_pred(Pred& p) {
        for (auto& q : p.preds) finalize_pred(*q);
        for (auto& e : p.exprs) finalize_expr(*e);
    }
};

TypeChecker::TypeChecker(const TypeEnv& globals) : impl_(std::make_unique<Impl>(globals)) {}
TypeChecker::~TypeChecker() = default;

void TypeChecker::push_params(const std::vector<std::string>& names) { impl_->push_scope(names); }
void TypeChecker::pop_params() { impl_->pop_scope(); }
void TypeChecker::check(Pred& p) { impl_->check_pred(p); }
void TypeChecker::check(Expr& e) { impl_->check_expr(e); }
void TypeChecker::finalize(Pred& p) { impl_->finalize_pred(p); }
void TypeChecker::finalize(Expr& e) { impl_->finalize_expr(e); }

BTypePtr TypeChecker::param_type(const std::string& name) {
    return impl_->to_btype(impl_->lookup(name, SourceLoc{}));
}

void typecheck(Pred& p, const TypeEnv& env) {
    TypeChecker tc(env);
    tc.check(p);
    tc.finalize(p);
}

BTypePtr typecheck(Expr& e, const TypeEnv& env) {
    TypeChecker tc(env);
    tc.check(e);
    tc.finalize(e);
    return e.type;
}

}  // namespace bcheck
