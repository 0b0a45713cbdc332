// Canonical unparser. Emits the minimal parentheses that make
// parse(print(ast)) structurally identical to the original for every AST the
// parser can produce.
#include <string>

#include "bcheck/ast.hpp"

namespace bcheck {

namespace {

// Binding strength, loosest to tightest. Mirrors the parser.
int expr_level(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Compose: return 1;
        case ExprKind::Union:
        case ExprKind::Inter:
        case ExprKind::Override:
        case ExprKind::DomRestrict:
        case ExprKind::DomSubtract:
        case ExprKind::RanRestrict:
        case ExprKind::RanSubtract: return 2;
        case ExprKind::Maplet: return 3;
        case ExprKind::Interval: return 4;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::SetMinus: return 5;
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Mod:
        case ExprKind::Cartesian: return 6;
        case ExprKind::Inverse:
        case ExprKind::Image:
        case ExprKind::Apply: return 8;
        default: return 9;
    }
}

const char* expr_op(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Compose: return ";";
        case ExprKind::Union: return "\\/";
        case ExprKind::Inter: return "/\\";
        case ExprKind::Override: return "<+";
        case ExprKind::DomRestrict: return "<|";
        case ExprKind::DomSubtract: return "<<|";
        case ExprKind::RanRestrict: return "|>";
        case ExprKind::RanSubtract: return "|>>";
        case ExprKind::Maplet: return "|->";
        case ExprKind::Interval: return "..";
        case ExprKind::Add: return "+";
        case ExprKind::Sub:
        case ExprKind::SetMinus: return "-";
        case ExprKind::Mul:
        case ExprKind::Cartesian: return "*";
        case ExprKind::Div: return "/";
        case ExprKind::Mod: return "mod";
        default: return "?";
    }
}

const char* builtin_name(ExprKind k) {
    switch (k) {
        case ExprKind::Card: return "card";
        case ExprKind::MinOf: return "min";
        case ExprKind::MaxOf: return "max";
        case ExprKind::Dom: return "dom";
        case ExprKind::Ran: return "ran";
        case ExprKind::SeqSize: return "size";
        case ExprKind::SeqFirst: return "first";
        case ExprKind::SeqLast: return "last";
        case ExprKind::Prj1: return "prj1";
        case ExprKind::Prj2: return "prj2";
        default: return nullptr;
    }
}

void print_e(const Expr& e, int need, std::string& out);
void print_p(const Pred& p, int need, std::string& out);

void join_vars(const std::vector<std::string>& vars, std::string& out) {
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += vars[i];
    }
}

void print_e(const Expr& e, int need, std::string& out) {
    int level = expr_level(e);
    bool parens = level < need;
    if (parens) out += "(";
    switch (e.kind) {
        case ExprKind::IntLit: out += std::to_string(e.int_val); break;
        case ExprKind::StrLit:
            out += "\"";
            out += e.text;
            out += "\"";
            break;
        case ExprKind::BoolLit: out += e.bool_val ? "TRUE" : "FALSE"; break;
        case ExprKind::Name: out += e.text; break;
        case ExprKind::SetExt: {
            out += "{";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                print_e(*e.args[i], 0, out);
            }
            out += "}";
            break;
        }
        case ExprKind::SetCompr: {
            out += "{";
            join_vars(e.bound_vars, out);
            out += " | ";
            print_p(*e.body, 0, out);
            out += "}";
            break;
        }
        case ExprKind::Lambda: {
            out += "%(";
            join_vars(e.bound_vars, out);
            out += ").(";
            print_p(*e.body, 0, out);
            out += " | ";
            print_e(*e.args[0], 0, out);
            out += ")";
            break;
        }
        case ExprKind::Inverse:
            print_e(*e.args[0], 8, out);
            out += "~";
            break;
        case ExprKind::Image:
            print_e(*e.args[0], 8, out);
            out += "[";
            print_e(*e.args[1], 0, out);
            out += "]";
            break;
        case ExprKind::Apply:
            print_e(*e.args[0], 8, out);
            out += "(";
            print_e(*e.args[1], 0, out);
            out += ")";
            break;
        default: {
            if (const char* name = builtin_name(e.kind)) {
                out += name;
                out += "(";
                print_e(*e.args[0], 0, out);
                out += ")";
                break;
            }
            // binary operator; Interval is non-associative, the rest are
            // left-associative
            int left_need = e.kind == ExprKind::Interval ? level + 1 : level;
            print_e(*e.args[0], left_need, out);
            out += " ";
            out += expr_op(e);
            out += " ";
            print_e(*e.args[1], level + 1, out);
            break;
        }
    }
    if (parens) out += ")";
}

int pred_level(const Pred& p) {
    switch (p.kind) {
        case PredKind::Iff: return 1;
        case PredKind::Implies: return 2;
        case PredKind::Or: return 3;
        case PredKind::And: return 4;
        default: return 5;
    }
}

const char* compare_op(PredKind k) {
    switch (k) {
        case PredKind::Eq: return "=";
        case PredKind::Ne: return "/=";
        case PredKind::Lt: return "<";
        case PredKind::Le: return "<=";
        case PredKind::Gt: return ">";
        case PredKind::Ge: return ">=";
        case PredKind::Member: return ":";
        case PredKind::NotMember: return "/:";
        case PredKind::Subset: return "<:";
        case PredKind::NotSubset: return "/<:";
        default: return nullptr;
    }
}

void print_p(const Pred& p, int need, std::string& out) {
    int level = pred_level(p);
    bool parens = level < need;
    if (parens) out += "(";
    switch (p.kind) {
        case PredKind::Iff:
        case PredKind::Or:
        case PredKind::And: {
            const char* op = p.kind == PredKind::Iff ? "<=>" : (p.kind == PredKind::Or ? "or" : "&");
            print_p(*p.preds[0], level, out);
            out += " ";
            out += op;
            out += " ";
            print_p(*p.preds[1], level + 1, out);
            break;
        }
        case PredKind::Implies:
            print_p(*p.preds[0], 3, out);
            out += " => ";
            print_p(*p.preds[1], 2, out);
            break;
        case PredKind::Not:
            out += "not ";
            print_p(*p.preds[0], 5, out);
            break;
        case PredKind::Forall:
        case PredKind::Exists: {
            out += p.kind == PredKind::Forall ? "!(" : "#(";
            join_vars(p.bound_vars, out);
            out += ").(";
            print_p(*p.preds[0], 0, out);
            out += ")";
            break;
        }
        case PredKind::DefRef: out += p.text; break;
        default: {
            print_e(*p.exprs[0], 0, out);
            out += " ";
            out += compare_op(p.kind);
            out += " ";
            print_e(*p.exprs[1], 0, out);
            break;
        }
    }
    if (parens) out += ")";
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    print_e(e, 0, out);
    return out;
}

std::string print_pred(const Pred& p) {
    std::string out;
    print_p(p, 0, out);
    return out;
}

}  // namespace bcheck
