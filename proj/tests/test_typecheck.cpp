#include <doctest.h>

#include "bcheck/parser.hpp"
#include "bcheck/typecheck.hpp"

using namespace bcheck;

namespace {
BTypePtr type_of(const std::string& text, const TypeEnv& env = {}) {
    auto e = parse_expr_text(text);
    return typecheck(*e, env);
}
}  // namespace

TEST_CASE("integer arithmetic") {
    CHECK(type_equal(*type_of("1 + 2"), *t_int()));
}

TEST_CASE("mixing INT and BOOL is a mismatch naming both types") {
    try {
        type_of("1 + TRUE");
        FAIL("expected SemanticError");
    } catch (const SemanticError& e) {
        CHECK(std::string(e.what()).find("BOOL") != std::string::npos);
        CHECK(e.loc().line == 1);
    }
}

TEST_CASE("projection through nested sequence types") {
    TypeEnv env{{"s", t_set(t_pair(t_int(), t_pair(t_string(), t_string())))}};
    auto t = type_of("prj2(s(1))", env);
    CHECK(type_equal(*t, *t_string()));
}

TEST_CASE("minus is set difference exactly when the operands are sets") {
    TypeEnv env{{"S", t_set(t_int())}, {"T", t_set(t_int())}};
    auto e = parse_expr_text("S - T");
    typecheck(*e, env);
    CHECK(e->kind == ExprKind::SetMinus);

    auto e2 = parse_expr_text("1 - 2");
    typecheck(*e2, env);
    CHECK(e2->kind == ExprKind::Sub);
}

TEST_CASE("star is cartesian product exactly when the operands are sets") {
    TypeEnv env{{"S", t_set(t_int())}, {"T", t_set(t_string())}};
    auto e = parse_expr_text("S * T");
    auto t = typecheck(*e, env);
    CHECK(e->kind == ExprKind::Cartesian);
    CHECK(type_equal(*t, *t_set(t_pair(t_int(), t_string()))));

    auto e2 = parse_expr_text("2 * 3");
    typecheck(*e2, env);
    CHECK(e2->kind == ExprKind::Mul);
}

TEST_CASE("application needs a relation and a matching argument") {
    TypeEnv env{{"f", t_seq(t_int())}};
    CHECK(type_equal(*type_of("f(1)", env), *t_int()));
    CHECK_THROWS_AS(type_of("f(\"x\")", env), SemanticError);
    CHECK_THROWS_AS(type_of("f(1)(2)", env), SemanticError);
}

TEST_CASE("unknown names are reported") {
    CHECK_THROWS_AS(type_of("mystery + 1"), SemanticError);
}

TEST_CASE("comprehension and lambda types") {
    TypeEnv env{{"S", t_set(t_int())}};
    CHECK(type_equal(*type_of("{x | x : S & x > 1}", env), *t_set(t_int())));
    CHECK(type_equal(*type_of("{x, y | x : S & y : S}", env),
                     *t_set(t_pair(t_int(), t_int()))));
    CHECK(type_equal(*type_of("%x.(x : S | x + 1)", env), *t_set(t_pair(t_int(), t_int()))));
}

TEST_CASE("bound variable types are inferred from membership") {
    TypeEnv env{{"names", t_set(t_string())}};
    auto p = parse_pred_text("!(n).(n : names => n = \"x\")");
    typecheck(*p, env);  // must not throw
}

TEST_CASE("quantifier variables shadow outer names") {
    TypeEnv env{{"x", t_set(t_string())}};
    auto p = parse_pred_text("#(x).(x : {1,2} & x = 2)");
    typecheck(*p, env);
}

TEST_CASE("order comparisons require integers") {
    TypeEnv env{{"s", t_set(t_string())}};
    auto p = parse_pred_text("#(a).(a : s & a < \"b\")");
    CHECK_THROWS_AS(typecheck(*p, env), SemanticError);
}

TEST_CASE("empty set adapts to its context") {
    TypeEnv env{{"S", t_set(t_string())}};
    auto p = parse_pred_text("S = {}");
    typecheck(*p, env);
    auto t = type_of("card({})");
    CHECK(type_equal(*t, *t_int()));
}

TEST_CASE("relational operator types") {
    TypeEnv env{{"r", t_set(t_pair(t_int(), t_string()))}};
    CHECK(type_equal(*type_of("dom(r)", env), *t_set(t_int())));
    CHECK(type_equal(*type_of("ran(r)", env), *t_set(t_string())));
    CHECK(type_equal(*type_of("r~", env), *t_set(t_pair(t_string(), t_int()))));
    CHECK(type_equal(*type_of("r[{1}]", env), *t_set(t_string())));
    CHECK(type_equal(*type_of("r ; r~", env), *t_set(t_pair(t_int(), t_int()))));
    CHECK(type_equal(*type_of("{1} <| r", env), *t_set(t_pair(t_int(), t_string()))));
    CHECK(type_equal(*type_of("size(r)", env), *t_int()));
    CHECK(type_equal(*type_of("first(r)", env), *t_string()));
    CHECK_THROWS_AS(type_of("r ; r", env), SemanticError);
}

TEST_CASE("every expression node is annotated after finalize") {
    TypeEnv env{{"r", t_set(t_pair(t_int(), t_int()))}};
    auto p = parse_pred_text("!(x).(x : dom(r) => r(x) >= x - 1)");
    typecheck(*p, env);
    walk(*p, [&](const Expr& e) { CHECK(e.type != nullptr); }, [](const Pred&) {});
}
