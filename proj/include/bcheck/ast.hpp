// Abstract syntax of the predicate / expression language.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bcheck/btype.hpp"
#include "bcheck/errors.hpp"

namespace bcheck {

struct Expr;
struct Pred;
using ExprPtr = std::unique_ptr<Expr>;
using PredPtr = std::unique_ptr<Pred>;

enum class ExprKind {
    IntLit,
    StrLit,
    BoolLit,
    Name,        // plain or qualified (File!Column)
    Add,
    Sub,         // rewritten to SetMinus by the typechecker when operands are sets
    Mul,         // rewritten to Cartesian likewise
    Div,
    Mod,
    SetMinus,
    Cartesian,
    Interval,    // a..b
    SetExt,      // {e1,...,en}
    SetCompr,    // {x,... | P}
    Lambda,      // %x,...(P | E); args[0] is E
    Maplet,      // a |-> b
    Union,
    Inter,
    Card,
    MinOf,
    MaxOf,
    Dom,
    Ran,
    SeqSize,
    SeqFirst,
    SeqLast,
    Prj1,
    Prj2,
    Inverse,     // r~
    Image,       // r[s]
    Compose,     // r1 ; r2
    Override,    // f <+ g
    DomRestrict, // s <| r
    DomSubtract, // s <<| r
    RanRestrict, // r |> s
    RanSubtract, // r |>> s
    Apply,       // f(x)
};

enum class PredKind {
    And,
    Or,
    Not,
    Implies,
    Iff,
    Forall,
    Exists,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Member,
    NotMember,
    Subset,
    NotSubset,
    DefRef,  // bare reference to a predicate definition; gone after expansion
};

// Bounded-enumeration plan for a binder: an ordered generator per variable
// plus the residual filter conjuncts. Pointers reference nodes of the owning
// AST and stay valid for its lifetime.
struct EnumPlan {
    struct Generator {
        std::string var;
        const Expr* source = nullptr;
        bool equals = false;     // v = E rather than v : E
        bool invariant = false;  // source mentions no earlier plan variable
    };
    std::vector<Generator> generators;
    std::vector<const Pred*> filters;
};

struct Expr {
    ExprKind kind;
    SourceLoc loc;
    int64_t int_val = 0;
    bool bool_val = false;
    std::string text;                     // Name / StrLit
    std::vector<std::string> bound_vars;  // SetCompr, Lambda
    std::vector<ExprPtr> args;
    PredPtr body;                         // SetCompr, Lambda condition

    BTypePtr type;                   // set by the typechecker
    int tid = -1;                    // typechecker scratch
    std::unique_ptr<EnumPlan> plan;  // set by the planner on binders

    Expr(ExprKind k, SourceLoc l) : kind(k), loc(l) {}
    ExprPtr clone() const;
};

struct Pred {
    PredKind kind;
    SourceLoc loc;
    std::string text;                     // DefRef name
    std::vector<std::string> bound_vars;  // Forall / Exists
    std::vector<PredPtr> preds;
    std::vector<ExprPtr> exprs;

    std::unique_ptr<EnumPlan> plan;  // set by the planner on quantifiers

    Pred(PredKind k, SourceLoc l) : kind(k), loc(l) {}
    PredPtr clone() const;
};

ExprPtr mk_expr(ExprKind k, SourceLoc l);
PredPtr mk_pred(PredKind k, SourceLoc l);

// Structural equality; ignores locations, types and plans.
bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const Pred& a, const Pred& b);

// Names free in the node (binder-aware). Qualified names count as names.
void collect_free_names(const Expr& e, std::set<std::string>& out);
void collect_free_names(const Pred& p, std::set<std::string>& out);

// Walks every node, calling the visitors (used by location/annotation audits).
void walk(const Expr& e, const std::function<void(const Expr&)>& on_expr,
          const std::function<void(const Pred&)>& on_pred);
void walk(const Pred& p, const std::function<void(const Expr&)>& on_expr,
          const std::function<void(const Pred&)>& on_pred);

// Canonical unparser; parse(print(ast)) reproduces the AST.
std::string print_expr(const Expr& e);
std::string print_pred(const Pred& p);

}  // namespace bcheck
