#include <set>

#include "bcheck/parser.hpp"
#include "bcheck/rules.hpp"
#include "bcheck/token.hpp"

namespace bcheck {

namespace {

// %k placeholders must stay within the parameter count; %% escapes a percent
void validate_template(const std::string& tmpl, size_t param_count, SourceLoc loc) {
    for (size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] != '%') continue;
        if (i + 1 >= tmpl.size()) continue;
        char c = tmpl[i + 1];
        if (c == '%') {
            ++i;
            continue;
        }
        if (c >= '0' && c <= '9') {
            size_t k = static_cast<size_t>(c - '0');
            if (k < 1 || k > param_count)
                throw SemanticError("message placeholder %" + std::string(1, c) +
                                        " is out of range: the block has " +
                                        std::to_string(param_count) + " parameter(s)",
                                    loc);
            ++i;
        }
    }
}

// DEFINITION bodies may be a predicate or an expression; try the predicate
// reading first and keep the diagnostic of whichever parse got further.
void parse_def_body(Parser& p, Definition& def) {
    size_t save = p.pos();
    try {
        def.pred = p.pred();
        const Token& next = p.peek();
        if (next.kind == TokenKind::End ||
            (next.kind == TokenKind::Keyword && (next.text == "DEFINITION" || next.text == "RULE")))
            return;
        p.fail("unexpected input after definition body");
    } catch (const ParseError& pred_err) {
        size_t pred_pos = p.pos();
        p.rewind(save);
        def.pred.reset();
        try {
            def.expr = p.expr();
            const Token& next = p.peek();
            if (next.kind == TokenKind::End ||
                (next.kind == TokenKind::Keyword &&
                 (next.text == "DEFINITION" || next.text == "RULE")))
                return;
            p.fail("unexpected input after definition body");
        } catch (const ParseError& expr_err) {
            // report the parse that consumed more input
            if (p.pos() >= pred_pos) throw;
            throw pred_err;
        }
    }
}

CxBlock parse_block(Parser& p) {
    CxBlock block;
    block.loc = p.peek().loc;
    p.expect_kw("COUNTEREXAMPLE", "at start of block");
    if (p.peek().kind != TokenKind::StrLit) p.fail("expected message template string");
    block.message = p.eat().text;

    p.expect_kw("ANY", "after message");
    block.params.push_back(p.expect_ident("parameter name"));
    while (p.accept_op(",")) block.params.push_back(p.expect_ident("parameter name"));
    std::set<std::string> seen;
    for (const auto& param : block.params)
        if (!seen.insert(param).second)
            throw SemanticError("duplicate parameter '" + param + "'", block.loc);

    p.expect_kw("WHERE", "after parameters");
    block.where = p.pred();
    p.expect_kw("EXPECTED", "after WHERE predicate");
    block.expected = p.pred();
    p.expect_kw("END", "after EXPECTED predicate");

    validate_template(block.message, block.params.size(), block.loc);
    return block;
}

}  // namespace

RuleFile parse_rule_file(const std::string& text, const std::string& name) {
    Parser p(tokenize(text));
    RuleFile file;
    file.name = name;
    std::set<std::string> ids;

    while (!p.at_end()) {
        if (p.accept_kw("DEFINITION")) {
            Definition def;
            def.loc = p.peek().loc;
            def.name = p.expect_ident("definition name");
            p.expect_op("==", "after definition name");
            parse_def_body(p, def);
            file.defs.push_back(std::move(def));
        } else if (p.peek_is_kw("RULE")) {
            Rule rule;
            rule.loc = p.eat().loc;
            rule.id = p.expect_ident("rule id");
            if (!ids.insert(rule.id).second)
                throw SemanticError("duplicate rule id '" + rule.id + "'", rule.loc);
            while (p.peek_is_kw("COUNTEREXAMPLE")) rule.blocks.push_back(parse_block(p));
            if (rule.blocks.empty())
                p.fail("rule '" + rule.id + "' has no COUNTEREXAMPLE block");
            p.expect_kw("END", "after rule blocks");
            file.rules.push_back(std::move(rule));
        } else {
            p.fail("expected DEFINITION or RULE, got '" + p.peek().text + "'");
        }
    }
    return file;
}

}  // namespace bcheck
