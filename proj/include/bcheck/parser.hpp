#pragma once

#include <string>
#include <vector>

#include "bcheck/ast.hpp"
#include "bcheck/token.hpp"

namespace bcheck {

// Recursive-descent parser over a token stream. Rule and declaration file
// parsers embed one of these for the predicate / expression sublanguage.
class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    const Token& peek(size_t ahead = 0) const;
    bool at_end() const { return peek().kind == TokenKind::End; }
    Token eat();
    size_t pos() const { return pos_; }
    void rewind(size_t p) { pos_ = p; }

    bool peek_is_op(const char* text, size_t ahead = 0) const;
    bool peek_is_kw(const char* text, size_t ahead = 0) const;
    bool accept_op(const char* text);
    bool accept_kw(const char* text);
    void expect_op(const char* text, const char* context);
    void expect_kw(const char* text, const char* context);
    std::string expect_ident(const char* what);
    [[noreturn]] void fail(const std::string& message) const;

    // One predicate / expression, stopping at the first token that cannot
    // extend it.
    PredPtr pred();
    ExprPtr expr();

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    PredPtr pred_iff();
    PredPtr pred_implies();
    PredPtr pred_or();
    PredPtr pred_and();
    PredPtr pred_primary();
    PredPtr pred_comparison();
    PredPtr quantifier(PredKind kind);
    std::vector<std::string> var_list(const char* binder);

    ExprPtr expr_compose();
    ExprPtr expr_rel();
    ExprPtr expr_maplet();
    ExprPtr expr_interval();
    ExprPtr expr_add();
    ExprPtr expr_mul();
    ExprPtr expr_unary();
    ExprPtr expr_postfix();
    ExprPtr expr_atom();
    ExprPtr set_form(SourceLoc start);
    ExprPtr lambda(SourceLoc start);
};

// Full-consumption entry points; throw ParseError if tokens remain.
PredPtr parse_pred(std::vector<Token> tokens);
ExprPtr parse_expr(std::vector<Token> tokens);
PredPtr parse_pred_text(const std::string& text);
ExprPtr parse_expr_text(const std::string& text);

}  // namespace bcheck
