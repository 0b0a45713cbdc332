#include <doctest.h>

#include "bcheck/parser.hpp"

using namespace bcheck;

namespace {

const char* kNonOverlap =
    "!(r1,r2).(r1 : t_regenerativeBraking & r2 : t_regenerativeBraking & r1 /= r2 => "
    "a_regenerativeBrakingArea(r1) |-> a_regenerativeBrakingArea(r2) /: f_areaIntersectArea)";

// parse -> print -> parse must reproduce the AST
void check_pred_roundtrip(const std::string& text) {
    auto a = parse_pred_text(text);
    auto b = parse_pred_text(print_pred(*a));
    CHECK_MESSAGE(ast_equal(*a, *b), "round-trip failed for: ", text,
                  " printed as: ", print_pred(*a));
}

void check_expr_roundtrip(const std::string& text) {
    auto a = parse_expr_text(text);
    auto b = parse_expr_text(print_expr(*a));
    CHECK_MESSAGE(ast_equal(*a, *b), "round-trip failed for: ", text,
                  " printed as: ", print_expr(*a));
}

}  // namespace

TEST_CASE("the quantified non-overlap property parses to the expected shape") {
    auto p = parse_pred_text(kNonOverlap);
    REQUIRE(p->kind == PredKind::Forall);
    REQUIRE(p->bound_vars == std::vector<std::string>{"r1", "r2"});
    const Pred& body = *p->preds[0];
    REQUIRE(body.kind == PredKind::Implies);
    const Pred& hyp = *body.preds[0];
    CHECK(hyp.kind == PredKind::And);  // (r1 : t & r2 : t) & r1 /= r2, left-assoc
    CHECK(hyp.preds[1]->kind == PredKind::Ne);
    const Pred& concl = *body.preds[1];
    REQUIRE(concl.kind == PredKind::NotMember);
    CHECK(concl.exprs[0]->kind == ExprKind::Maplet);
    CHECK(concl.exprs[0]->args[0]->kind == ExprKind::Apply);
}

TEST_CASE("trivial comparison") {
    auto p = parse_pred_text("1 = 1");
    CHECK(p->kind == PredKind::Eq);
}

TEST_CASE("dangling conjunction is a syntax error") {
    CHECK_THROWS_AS(parse_pred_text("x : S &"), ParseError);
}

TEST_CASE("image binds tighter than the relational operators") {
    auto e = parse_expr_text("dom(r)[{1}]");
    REQUIRE(e->kind == ExprKind::Image);
    CHECK(e->args[0]->kind == ExprKind::Dom);
    CHECK(e->args[1]->kind == ExprKind::SetExt);
}

TEST_CASE("set comprehension with nested application") {
    auto e = parse_expr_text("{i | i : dom(s) & prj2(s(i)) = \"Trackside OMAP\"}");
    REQUIRE(e->kind == ExprKind::SetCompr);
    REQUIRE(e->bound_vars == std::vector<std::string>{"i"});
    CHECK(e->body->kind == PredKind::And);
}

TEST_CASE("malformed arithmetic is a syntax error with a location") {
    try {
        parse_expr_text("1 + * 2");
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.loc().line == 1);
        CHECK(err.loc().column == 5);
    }
}

TEST_CASE("arithmetic precedence") {
    auto e = parse_expr_text("1 + 2 * 3");
    REQUIRE(e->kind == ExprKind::Add);
    CHECK(e->args[1]->kind == ExprKind::Mul);
}

TEST_CASE("relational operators bind looser than arithmetic") {
    auto e = parse_expr_text("A \\/ 1 .. 3");
    REQUIRE(e->kind == ExprKind::Union);
    CHECK(e->args[1]->kind == ExprKind::Interval);
}

TEST_CASE("parenthesized expression comparison survives the predicate backtrack") {
    auto p = parse_pred_text("(1 + 2) = 3");
    REQUIRE(p->kind == PredKind::Eq);
    CHECK(p->exprs[0]->kind == ExprKind::Add);
}

TEST_CASE("parenthesized predicate") {
    auto p = parse_pred_text("(x : S) & y : T");
    REQUIRE(p->kind == PredKind::And);
    CHECK(p->preds[0]->kind == PredKind::Member);
}

TEST_CASE("application of a parenthesized function") {
    auto p = parse_pred_text("(f <+ g)(x) = 1");
    REQUIRE(p->kind == PredKind::Eq);
    CHECK(p->exprs[0]->kind == ExprKind::Apply);
    CHECK(p->exprs[0]->args[0]->kind == ExprKind::Override);
}

TEST_CASE("implication is right-associative") {
    auto p = parse_pred_text("x = 1 => y = 2 => z = 3");
    REQUIRE(p->kind == PredKind::Implies);
    CHECK(p->preds[1]->kind == PredKind::Implies);
}

TEST_CASE("unary minus desugars to zero minus") {
    auto e = parse_expr_text("-5");
    REQUIRE(e->kind == ExprKind::Sub);
    CHECK(e->args[0]->int_val == 0);
    CHECK(e->args[1]->int_val == 5);
}

TEST_CASE("lambda with two variables") {
    auto e = parse_expr_text("%(i,j).(i : 1..3 & j : 1..3 | i + j)");
    REQUIRE(e->kind == ExprKind::Lambda);
    CHECK(e->bound_vars.size() == 2);
    CHECK(e->args[0]->kind == ExprKind::Add);
}

TEST_CASE("duplicate bound variables are rejected") {
    CHECK_THROWS_AS(parse_pred_text("!(x,x).(x = 1 => x = 1)"), ParseError);
    CHECK_THROWS_AS(parse_expr_text("{x, x | x : S}"), ParseError);
}

TEST_CASE("integer literal overflow is reported") {
    CHECK_THROWS_AS(parse_expr_text("99999999999999999999"), ParseError);
}

TEST_CASE("every node of a parsed AST carries a location") {
    auto p = parse_pred_text(kNonOverlap);
    int nodes = 0;
    walk(*p, [&](const Expr& e) { ++nodes; CHECK(e.loc.line >= 1); CHECK(e.loc.column >= 1); },
         [&](const Pred& q) { ++nodes; CHECK(q.loc.line >= 1); CHECK(q.loc.column >= 1); });
    CHECK(nodes > 10);
}

TEST_CASE("round-trip: parse after print is the identity on parsed ASTs") {
    check_pred_roundtrip(kNonOverlap);
    check_pred_roundtrip("1 = 1");
    check_pred_roundtrip("x : S & y : T or z : U => w : V <=> not a = b");
    check_pred_roundtrip("#(x).(x : {1,2,3} & x * 2 > 3)");
    check_pred_roundtrip("(x : S) & (y : T or 1 = 2)");
    check_pred_roundtrip("{a, b | a : S & b : T} <: S * T");
    check_pred_roundtrip("s - t = u - v & 1 - 2 = -1");
    check_pred_roundtrip("f(g(x)) = h[{1}] & r~ ; s <+ t <| u = v");

    check_expr_roundtrip("dom(r)[{1}]");
    check_expr_roundtrip("1 + 2 * 3 - 4 / 5 mod 6");
    check_expr_roundtrip("(1 + 2) * 3");
    check_expr_roundtrip("{i | i : dom(s) & prj2(s(i)) = \"Trackside OMAP\"}");
    check_expr_roundtrip("%(i,j).(i : 1..3 & j : 4..6 | i |-> j)");
    check_expr_roundtrip("A \\/ B /\\ C - D");
    check_expr_roundtrip("(A \\/ B) /\\ (C - D)");
    check_expr_roundtrip("r1 ; r2 ; r3~");
    check_expr_roundtrip("S <| r |> T <+ q");
    check_expr_roundtrip("1 .. 10 - 1");
    check_expr_roundtrip("card({}) + min({1}) + max({2}) + size(s) - first(s) - last(s)");
    check_expr_roundtrip("{1 |-> \"a\", 2 |-> \"b\"}");
    check_expr_roundtrip("-x + -(y - z)");
}

TEST_CASE("deterministic parsing: same input yields the same printed AST") {
    auto a = parse_pred_text(kNonOverlap);
    auto b = parse_pred_text(kNonOverlap);
    CHECK(print_pred(*a) == print_pred(*b));
    CHECK(ast_equal(*a, *b));
}
