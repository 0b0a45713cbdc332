#include "bcheck/parser.hpp"

#include <charconv>
#include <set>

namespace bcheck {

namespace {

std::string describe(const Token& t) {
    switch (t.kind) {
        case TokenKind::End: return "end of input";
        case TokenKind::StrLit: return "string literal";
        default: return "'" + t.text + "'";
    }
}

bool is_compare_op(const Token& t, PredKind& out) {
    if (t.kind != TokenKind::Op) return false;
    if (t.text == "=") out = PredKind::Eq;
    else if (t.text == "/=") out = PredKind::Ne;
    else if (t.text == "<") out = PredKind::Lt;
    else if (t.text == "<=") out = PredKind::Le;
    else if (t.text == ">") out = PredKind::Gt;
    else if (t.text == ">=") out = PredKind::Ge;
    else if (t.text == ":") out = PredKind::Member;
    else if (t.text == "/:") out = PredKind::NotMember;
    else if (t.text == "<:") out = PredKind::Subset;
    else if (t.text == "/<:") out = PredKind::NotSubset;
    else return false;
    return true;
}

ExprKind builtin_kind(const std::string& kw) {
    if (kw == "card") return ExprKind::Card;
    if (kw == "min") return ExprKind::MinOf;
    if (kw == "max") return ExprKind::MaxOf;
    if (kw == "dom") return ExprKind::Dom;
    if (kw == "ran") return ExprKind::Ran;
    if (kw == "size") return ExprKind::SeqSize;
    if (kw == "first") return ExprKind::SeqFirst;
    if (kw == "last") return ExprKind::SeqLast;
    if (kw == "prj1") return ExprKind::Prj1;
    if (kw == "prj2") return ExprKind::Prj2;
    return ExprKind::Name;  // not a builtin
}

ExprPtr binop(ExprKind k, ExprPtr lhs, ExprPtr rhs) {
    auto node = mk_expr(k, lhs->loc);
    node->args.push_back(std::move(lhs));
    node->args.push_back(std::move(rhs));
    return node;
}

PredPtr binpred(PredKind k, PredPtr lhs, PredPtr rhs) {
    auto node = mk_pred(k, lhs->loc);
    node->preds.push_back(std::move(lhs));
    node->preds.push_back(std::move(rhs));
    return node;
}

}  // namespace

const Token& Parser::peek(size_t ahead) const {
    size_t i = pos_ + ahead;
    if (i >= toks_.size()) i = toks_.size() - 1;  // End sentinel
    return toks_[i];
}

Token Parser::eat() {
    const Token& t = peek();
    if (t.kind != TokenKind::End) ++pos_;
    return t;
}

bool Parser::peek_is_op(const char* text, size_t ahead) const {
    const Token& t = peek(ahead);
    return (t.kind == TokenKind::Op || t.kind == TokenKind::Punct) && t.text == text;
}

bool Parser::peek_is_kw(const char* text, size_t ahead) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Keyword && t.text == text;
}

bool Parser::accept_op(const char* text) {
    if (!peek_is_op(text)) return false;
    ++pos_;
    return true;
}

bool Parser::accept_kw(const char* text) {
    if (!peek_is_kw(text)) return false;
    ++pos_;
    return true;
}

void Parser::expect_op(const char* text, const char* context) {
    if (!accept_op(text))
        fail(std::string("expected '") + text + "' " + context + ", got " + describe(peek()));
}

void Parser::expect_kw(const char* text, const char* context) {
    if (!accept_kw(text))
        fail(std::string("expected '") + text + "' " + context + ", got " + describe(peek()));
}

std::string Parser::expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident)
        fail(std::string("expected ") + what + ", got " + describe(t));
    return eat().text;
}

void Parser::fail(const std::string& message) const { throw ParseError(message, peek().loc); }

// ---------------------------------------------------------------------------
// predicates

PredPtr Parser::pred() { return pred_iff(); }

PredPtr Parser::pred_iff() {
    auto lhs = pred_implies();
    while (peek_is_op("<=>")) {
        eat();
        lhs = binpred(PredKind::Iff, std::move(lhs), pred_implies());
    }
    return lhs;
}

PredPtr Parser::pred_implies() {
    auto lhs = pred_or();
    if (peek_is_op("=>")) {
        eat();
        return binpred(PredKind::Implies, std::move(lhs), pred_implies());
    }
    return lhs;
}

PredPtr Parser::pred_or() {
    auto lhs = pred_and();
    while (peek_is_kw("or")) {
        eat();
        lhs = binpred(PredKind::Or, std::move(lhs), pred_and());
    }
    return lhs;
}

PredPtr Parser::pred_and() {
    auto lhs = pred_primary();
    while (peek_is_op("&")) {
        eat();
        lhs = binpred(PredKind::And, std::move(lhs), pred_primary());
    }
    return lhs;
}

// Tokens that may legally follow a complete predicate. A bare identifier in
// predicate position is a definition reference only when one of these comes
// next; otherwise it starts a comparison.
static bool pred_follow(const Token& t) {
    switch (t.kind) {
        case TokenKind::End: return true;
        case TokenKind::Op:
            return t.text == "&" || t.text == "=>" || t.text == "<=>" || t.text == "|";
        case TokenKind::Punct: return t.text == ")" || t.text == "}";
        case TokenKind::Keyword:
            return t.text == "or" || t.text == "END" || t.text == "EXPECTED" ||
                   t.text == "DEFINITION" || t.text == "RULE";
        default: return false;
    }
}

PredPtr Parser::pred_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::End) fail("expected predicate, got end of input");

    if (t.kind == TokenKind::Keyword && t.text == "not") {
        SourceLoc loc = eat().loc;
        auto node = mk_pred(PredKind::Not, loc);
        node->preds.push_back(pred_primary());
        return node;
    }
    if (peek_is_op("!")) return quantifier(PredKind::Forall);
    if (peek_is_op("#")) return quantifier(PredKind::Exists);

    if (peek_is_op("(")) {
        // could be a parenthesized predicate or the start of an expression;
        // try the predicate reading and fall back on failure
        size_t save = pos_;
        eat();
        try {
            auto inner = pred();
            expect_op(")", "after predicate");
            if (pred_follow(peek())) return inner;
        } catch (const ParseError&) {
        }
        rewind(save);
        return pred_comparison();
    }

    if (t.kind == TokenKind::Ident && pred_follow(peek(1))) {
        auto node = mk_pred(PredKind::DefRef, t.loc);
        node->text = eat().text;
        return node;
    }

    return pred_comparison();
}

PredPtr Parser::pred_comparison() {
    auto lhs = expr();
    PredKind op;
    if (!is_compare_op(peek(), op))
        fail("expected comparison or membership operator, got " + describe(peek()));
    SourceLoc loc = eat().loc;
    auto rhs = expr();
    auto node = mk_pred(op, loc);
    node->exprs.push_back(std::move(lhs));
    node->exprs.push_back(std::move(rhs));
    return node;
}

std::vector<std::string> Parser::var_list(const char* binder) {
    std::vector<std::string> vars;
    if (accept_op("(")) {
        vars.push_back(expect_ident("bound variable"));
        while (accept_op(",")) vars.push_back(expect_ident("bound variable"));
        expect_op(")", "after bound variables");
    } else {
        vars.push_back(expect_ident("bound variable"));
    }
    std::set<std::string> seen;
    for (const auto& v : vars)
        if (!seen.insert(v).second)
            fail(std::string("duplicate bound variable '") + v + "' in " + binder);
    return vars;
}

PredPtr Parser::quantifier(PredKind kind) {
    SourceLoc loc = eat().loc;  // '!' or '#'
    auto node = mk_pred(kind, loc);
    node->bound_vars = var_list(kind == PredKind::Forall ? "'!'" : "'#'");
    expect_op(".", "after quantifier variables");
    expect_op("(", "before quantifier body");
    node->preds.push_back(pred());
    expect_op(")", "after quantifier body");
    return node;
}

// ---------------------------------------------------------------------------
// expressions

ExprPtr Parser::expr() { return expr_compose(); }

ExprPtr Parser::expr_compose() {
    auto lhs = expr_rel();
    while (peek_is_op(";")) {
        eat();
        lhs = binop(ExprKind::Compose, std::move(lhs), expr_rel());
    }
    return lhs;
}

ExprPtr Parser::expr_rel() {
    auto lhs = expr_maplet();
    while (true) {
        ExprKind k;
        if (peek_is_op("\\/")) k = ExprKind::Union;
        else if (peek_is_op("/\\")) k = ExprKind::Inter;
        else if (peek_is_op("<+")) k = ExprKind::Override;
        else if (peek_is_op("<|")) k = ExprKind::DomRestrict;
        else if (peek_is_op("<<|")) k = ExprKind::DomSubtract;
        else if (peek_is_op("|>")) k = ExprKind::RanRestrict;
        else if (peek_is_op("|>>")) k = ExprKind::RanSubtract;
        else break;
        eat();
        lhs = binop(k, std::move(lhs), expr_maplet());
    }
    return lhs;
}

ExprPtr Parser::expr_maplet() {
    auto lhs = expr_interval();
    while (peek_is_op("|->")) {
        eat();
        lhs = binop(ExprKind::Maplet, std::move(lhs), expr_interval());
    }
    return lhs;
}

ExprPtr Parser::expr_interval() {
    auto lhs = expr_add();
    if (peek_is_op("..")) {
        eat();
        return binop(ExprKind::Interval, std::move(lhs), expr_add());
    }
    return lhs;
}

ExprPtr Parser::expr_add() {
    auto lhs = expr_mul();
    while (true) {
        ExprKind k;
        if (peek_is_op("+")) k = ExprKind::Add;
        else if (peek_is_op("-")) k = ExprKind::Sub;
        else break;
        eat();
        lhs = binop(k, std::move(lhs), expr_mul());
    }
    return lhs;
}

ExprPtr Parser::expr_mul() {
    auto lhs = expr_unary();
    while (true) {
        ExprKind k;
        if (peek_is_op("*")) k = ExprKind::Mul;
        else if (peek_is_op("/")) k = ExprKind::Div;
        else if (peek_is_kw("mod")) k = ExprKind::Mod;
        else break;
        eat();
        lhs = binop(k, std::move(lhs), expr_unary());
    }
    return lhs;
}

ExprPtr Parser::expr_unary() {
    if (peek_is_op("-")) {
        SourceLoc loc = eat().loc;
        auto zero = mk_expr(ExprKind::IntLit, loc);
        zero->int_val = 0;
        return binop(ExprKind::Sub, std::move(zero), expr_unary());
    }
    return expr_postfix();
}

ExprPtr Parser::expr_postfix() {
    auto e = expr_atom();
    while (true) {
        if (peek_is_op("~")) {
            SourceLoc loc = eat().loc;
            auto node = mk_expr(ExprKind::Inverse, loc);
            node->args.push_back(std::move(e));
            e = std::move(node);
        } else if (peek_is_op("[")) {
            eat();
            auto arg = expr();
            expect_op("]", "after relational image argument");
            e = binop(ExprKind::Image, std::move(e), std::move(arg));
        } else if (peek_is_op("(")) {
            eat();
            auto arg = expr();
            expect_op(")", "after function argument");
            e = binop(ExprKind::Apply, std::move(e), std::move(arg));
        } else {
            break;
        }
    }
    return e;
}

ExprPtr Parser::expr_atom() {
    const Token& t = peek();
    switch (t.kind) {
        case TokenKind::IntLit: {
            auto node = mk_expr(ExprKind::IntLit, t.loc);
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), node->int_val);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size())
                fail("integer literal out of range");
            eat();
            return node;
        }
        case TokenKind::StrLit: {
            auto node = mk_expr(ExprKind::StrLit, t.loc);
            node->text = eat().text;
            return node;
        }
        case TokenKind::Ident:
        case TokenKind::QualIdent: {
            auto node = mk_expr(ExprKind::Name, t.loc);
            node->text = eat().text;
            return node;
        }
        case TokenKind::Keyword: {
            if (t.text == "TRUE" || t.text == "FALSE") {
                auto node = mk_expr(ExprKind::BoolLit, t.loc);
                node->bool_val = t.text == "TRUE";
                eat();
                return node;
            }
            ExprKind bk = builtin_kind(t.text);
            if (bk != ExprKind::Name) {
                SourceLoc loc = eat().loc;
                auto node = mk_expr(bk, loc);
                expect_op("(", "after builtin");
                node->args.push_back(expr());
                expect_op(")", "after builtin argument");
                return node;
            }
            fail("expected expression, got " + describe(t));
        }
        case TokenKind::Punct:
        case TokenKind::Op: {
            if (t.text == "(") {
                eat();
                auto inner = expr();
                expect_op(")", "after expression");
                return inner;
            }
            if (t.text == "{") return set_form(eat().loc);
            if (t.text == "%") return lambda(eat().loc);
            fail("expected expression, got " + describe(t));
        }
        default: fail("expected expression, got " + describe(t));
    }
}

// {}, {e1,...,en} or {x,... | P}; the opening brace is already consumed.
ExprPtr Parser::set_form(SourceLoc start) {
    if (accept_op("}")) return mk_expr(ExprKind::SetExt, start);

    // lookahead: identifiers separated by commas up to '|' means comprehension
    bool comprehension = false;
    for (size_t k = 0;; k += 2) {
        if (peek(k).kind != TokenKind::Ident) break;
        if (peek_is_op("|", k + 1)) {
            comprehension = true;
            break;
        }
        if (!peek_is_op(",", k + 1)) break;
    }

    if (comprehension) {
        auto node = mk_expr(ExprKind::SetCompr, start);
        node->bound_vars.push_back(expect_ident("bound variable"));
        while (accept_op(",")) node->bound_vars.push_back(expect_ident("bound variable"));
        std::set<std::string> seen;
        for (const auto& v : node->bound_vars)
            if (!seen.insert(v).second)
                fail("duplicate bound variable '" + v + "' in comprehension");
        expect_op("|", "in set comprehension");
        node->body = pred();
        expect_op("}", "after set comprehension");
        return node;
    }

    auto node = mk_expr(ExprKind::SetExt, start);
    node->args.push_back(expr());
    while (accept_op(",")) node->args.push_back(expr());
    expect_op("}", "after set elements");
    return node;
}

// %vars.(P | E); the '%' is already consumed.
ExprPtr Parser::lambda(SourceLoc start) {
    auto node = mk_expr(ExprKind::Lambda, start);
    node->bound_vars = var_list("'%'");
    expect_op(".", "after lambda variables");
    expect_op("(", "before lambda body");
    node->body = pred();
    expect_op("|", "between lambda condition and value");
    node->args.push_back(expr());
    expect_op(")", "after lambda value");
    return node;
}

// ---------------------------------------------------------------------------

PredPtr parse_pred(std::vector<Token> tokens) {
    Parser p(std::move(tokens));
    auto ast = p.pred();
    if (!p.at_end()) p.fail("unexpected trailing input after predicate");
    return ast;
}

ExprPtr parse_expr(std::vector<Token> tokens) {
    Parser p(std::move(tokens));
    auto ast = p.expr();
    if (!p.at_end()) p.fail("unexpected trailing input after expression");
    return ast;
}

PredPtr parse_pred_text(const std::string& text) { return parse_pred(tokenize(text)); }
ExprPtr parse_expr_text(const std::string& text) { return parse_expr(tokenize(text)); }

}  // namespace bcheck
