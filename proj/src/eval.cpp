#include "bcheck/eval.hpp"

#include "bcheck/setops.hpp"

namespace bcheck {

namespace {

[[noreturn]] void rethrow(const ValueOpError& err, SourceLoc loc) {
    throw EvalError(err.kind, err.message, loc, err.witness);
}

int64_t checked_add(int64_t a, int64_t b, SourceLoc loc) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw EvalError(EvalErrorKind::IntOverflow, "integer overflow in '+'", loc);
    return r;
}

int64_t checked_sub(int64_t a, int64_t b, SourceLoc loc) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw EvalError(EvalErrorKind::IntOverflow, "integer overflow in '-'", loc);
    return r;
}

int64_t checked_mul(int64_t a, int64_t b, SourceLoc loc) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw EvalError(EvalErrorKind::IntOverflow, "integer overflow in '*'", loc);
    return r;
}

// division truncates toward zero; a = (a/b)*b + (a mod b)
int64_t checked_div(int64_t a, int64_t b, SourceLoc loc) {
    if (b == 0) throw EvalError(EvalErrorKind::WdDivByZero, "division by zero", loc);
    if (a == INT64_MIN && b == -1)
        throw EvalError(EvalErrorKind::IntOverflow, "integer overflow in '/'", loc);
    return a / b;
}

int64_t checked_mod(int64_t a, int64_t b, SourceLoc loc) {
    if (b == 0) throw EvalError(EvalErrorKind::WdDivByZero, "modulo by zero", loc);
    if (b == -1) return 0;
    return a % b;
}

}  // namespace

Value eval_expr(const Expr& e, EvalCtx& ctx) {
    switch (e.kind) {
        case ExprKind::IntLit: return Value::integer(e.int_val);
        case ExprKind::StrLit: return Value::str(e.text);
        case ExprKind::BoolLit: return Value::boolean(e.bool_val);
        case ExprKind::Name: {
            const Value* v = ctx.lookup(e.text);
            if (!v) throw InternalError("unbound name '" + e.text + "' at evaluation");
            return *v;
        }

        case ExprKind::Add:
            return Value::integer(checked_add(eval_expr(*e.args[0], ctx).as_int(),
                                              eval_expr(*e.args[1], ctx).as_int(), e.loc));
        case ExprKind::Sub:
            return Value::integer(checked_sub(eval_expr(*e.args[0], ctx).as_int(),
                                              eval_expr(*e.args[1], ctx).as_int(), e.loc));
        case ExprKind::Mul:
            return Value::integer(checked_mul(eval_expr(*e.args[0], ctx).as_int(),
                                              eval_expr(*e.args[1], ctx).as_int(), e.loc));
        case ExprKind::Div:
            return Value::integer(checked_div(eval_expr(*e.args[0], ctx).as_int(),
                                              eval_expr(*e.args[1], ctx).as_int(), e.loc));
        case ExprKind::Mod:
            return Value::integer(checked_mod(eval_expr(*e.args[0], ctx).as_int(),
                                              eval_expr(*e.args[1], ctx).as_int(), e.loc));

        case ExprKind::Interval: {
            int64_t lo = eval_expr(*e.args[0], ctx).as_int();
            int64_t hi = eval_expr(*e.args[1], ctx).as_int();
            try {
                return interval(lo, hi, ctx.set_limit);
            } catch (const ValueOpError& err) {
                rethrow(err, e.loc);
            }
        }

        case ExprKind::SetExt: {
            std::vector<Value> elems;
            elems.reserve(e.args.size());
            for (const auto& a : e.args) elems.push_back(eval_expr(*a, ctx));
            return mk_set(std::move(elems));
        }

        case ExprKind::SetCompr: {
            std::vector<Value> elems;
            enumerate(*e.plan, ctx, [&](EvalCtx& c) {
                Value tuple = *c.lookup(e.bound_vars[0]);
                for (size_t i = 1; i < e.bound_vars.size(); ++i)
                    tuple = Value::pair(std::move(tuple), *c.lookup(e.bound_vars[i]));
                elems.push_back(std::move(tuple));
                return true;
            });
            return mk_set(std::move(elems));
        }

        case ExprKind::Lambda: {
            std::vector<Value> elems;
            enumerate(*e.plan, ctx, [&](EvalCtx& c) {
                Value tuple = *c.lookup(e.bound_vars[0]);
                for (size_t i = 1; i < e.bound_vars.size(); ++i)
                    tuple = Value::pair(std::move(tuple), *c.lookup(e.bound_vars[i]));
                elems.push_back(Value::pair(std::move(tuple), eval_expr(*e.args[0], c)));
                return true;
            });
            return mk_set(std::move(elems));
        }

        case ExprKind::Maplet:
            return Value::pair(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));

        default: break;
    }

    // set / relation operators share the ValueOpError wrapping
    try {
        switch (e.kind) {
            case ExprKind::Union:
                return set_union(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::Inter:
                return set_inter(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::SetMinus:
                return set_minus(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::Cartesian:
                return cartesian(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx),
                                 ctx.set_limit);
            case ExprKind::Card: return Value::integer(set_card(eval_expr(*e.args[0], ctx)));
            case ExprKind::MinOf: return Value::integer(set_min(eval_expr(*e.args[0], ctx)));
            case ExprKind::MaxOf: return Value::integer(set_max(eval_expr(*e.args[0], ctx)));
            case ExprKind::Dom: return rel_dom(eval_expr(*e.args[0], ctx));
            case ExprKind::Ran: return rel_ran(eval_expr(*e.args[0], ctx));
            case ExprKind::SeqSize: return Value::integer(seq_size(eval_expr(*e.args[0], ctx)));
            case ExprKind::SeqFirst: return seq_first(eval_expr(*e.args[0], ctx));
            case ExprKind::SeqLast: return seq_last(eval_expr(*e.args[0], ctx));
            case ExprKind::Prj1: return eval_expr(*e.args[0], ctx).as_pair().first;
            case ExprKind::Prj2: return eval_expr(*e.args[0], ctx).as_pair().second;
            case ExprKind::Inverse: return rel_inverse(eval_expr(*e.args[0], ctx));
            case ExprKind::Image:
                return rel_image(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::Compose:
                return rel_compose(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::Override:
                return rel_override(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::DomRestrict:
                return dom_restrict(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::DomSubtract:
                return dom_subtract(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::RanRestrict:
                return ran_restrict(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::RanSubtract:
                return ran_subtract(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            case ExprKind::Apply:
                return apply_fn(eval_expr(*e.args[0], ctx), eval_expr(*e.args[1], ctx));
            default: break;
        }
    } catch (const ValueOpError& err) {
        rethrow(err, e.loc);
    }
    throw InternalError("unhandled expression kind at evaluation");
}

bool eval_pred(const Pred& p, EvalCtx& ctx) {
    switch (p.kind) {
        case PredKind::And:
            return eval_pred(*p.preds[0], ctx) && eval_pred(*p.preds[1], ctx);
        case PredKind::Or:
            return eval_pred(*p.preds[0], ctx) || eval_pred(*p.preds[1], ctx);
        case PredKind::Not: return !eval_pred(*p.preds[0], ctx);
        case PredKind::Implies:
            return !eval_pred(*p.preds[0], ctx) || eval_pred(*p.preds[1], ctx);
        case PredKind::Iff: {
            bool a = eval_pred(*p.preds[0], ctx);
            bool b = eval_pred(*p.preds[1], ctx);
            return a == b;
        }

        case PredKind::Forall: {
            // body is H => B; the plan enumerates the satisfiers of H
            const Pred& goal = *p.preds[0]->preds[1];
            bool holds = true;
            enumerate(*p.plan, ctx, [&](EvalCtx& c) {
                if (!eval_pred(goal, c)) {
                    holds = false;
                    return false;
                }
                return true;
            });
            return holds;
        }
        case PredKind::Exists: {
            bool found = false;
            enumerate(*p.plan, ctx, [&](EvalCtx&) {
                found = true;
                return false;
            });
            return found;
        }

        case PredKind::Eq:
            return value_eq(eval_expr(*p.exprs[0], ctx), eval_expr(*p.exprs[1], ctx));
        case PredKind::Ne:
            return !value_eq(eval_expr(*p.exprs[0], ctx), eval_expr(*p.exprs[1], ctx));
        case PredKind::Lt:
            return eval_expr(*p.exprs[0], ctx).as_int() < eval_expr(*p.exprs[1], ctx).as_int();
        case PredKind::Le:
            return eval_expr(*p.exprs[0], ctx).as_int() <= eval_expr(*p.exprs[1], ctx).as_int();
        case PredKind::Gt:
            return eval_expr(*p.exprs[0], ctx).as_int() > eval_expr(*p.exprs[1], ctx).as_int();
        case PredKind::Ge:
            return eval_expr(*p.exprs[0], ctx).as_int() >= eval_expr(*p.exprs[1], ctx).as_int();

        case PredKind::Member:
            return set_member(eval_expr(*p.exprs[0], ctx), eval_expr(*p.exprs[1], ctx));
        case PredKind::NotMember:
            return !set_member(eval_expr(*p.exprs[0], ctx), eval_expr(*p.exprs[1], ctx));
        case PredKind::Subset:
            return set_subset(eval_expr(*p.exprs[0], ctx), eval_expr(*p.exprs[1], ctx));
        case PredKind::NotSubset:
            return !set_subset(eval_expr(*p.exprs[0], ctx), eval_expr(*p.exprs[1], ctx));

        case PredKind::DefRef:
            throw InternalError("definition reference survived to evaluation");
    }
    throw InternalError("unhandled predicate kind at evaluation");
}

}  // namespace bcheck
