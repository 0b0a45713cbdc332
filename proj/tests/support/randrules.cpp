#include "randrules.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace bcheck::testing {

namespace {

std::string set_literal(const std::vector<int64_t>& xs) {
    std::string out = "{";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);  // negatives parse as unary minus
    }
    out += "}";
    return out;
}

}  // namespace

std::string OracleRule::rule_text() const {
    std::ostringstream out;
    out << "RULE " << id << "\n  COUNTEREXAMPLE \"";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) out << " ";
        out << "%" << (i + 1);
    }
    out << "\"\n  ANY ";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) out << ", ";
        out << params[i];
    }
    out << "\n  WHERE " << where_text << "\n  EXPECTED " << expected_text << "\n  END\nEND\n";
    return out.str();
}

std::vector<Binding> OracleRule::brute_force_satisfiers() const {
    std::vector<Binding> out;
    Binding current(params.size(), 0);
    std::function<void(size_t)> walk = [&](size_t i) {
        if (i == params.size()) {
            for (const auto& f : filters)
                if (!f(current)) return;
            out.push_back(current);
            return;
        }
        if (vars[i].equals) {
            current[i] = vars[i].compute(current);
            walk(i + 1);
            return;
        }
        for (int64_t v : vars[i].domain) {
            current[i] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return out;
}

std::vector<Binding> OracleRule::brute_force_findings() const {
    std::vector<Binding> out;
    for (const auto& b : brute_force_satisfiers())
        if (!expected(b)) out.push_back(b);
    return out;
}

OracleRule random_rule(std::mt19937& rng, int max_vars, int max_domain) {
    static int counter = 0;
    OracleRule rule;
    rule.id = "rand_" + std::to_string(++counter);

    std::uniform_int_distribution<int> nvars(1, max_vars);
    std::uniform_int_distribution<int> dsize(1, max_domain);
    std::uniform_int_distribution<int64_t> dval(-9, 9);
    std::uniform_int_distribution<int> pct(0, 99);

    int k = nvars(rng);
    for (int i = 0; i < k; ++i) rule.params.push_back("x" + std::to_string(i + 1));

    std::vector<std::string> conjuncts;

    for (int i = 0; i < k; ++i) {
        OracleVar var;
        bool equals = i > 0 && pct(rng) < 30;
        if (equals) {
            var.equals = true;
            int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
            int64_t c = dval(rng);
            int form = pct(rng) % 3;
            if (form == 0) {
                var.source_text = rule.params[j] + " + " + std::to_string(std::abs(c));
                var.compute = [j, c](const Binding& b) { return b[j] + std::llabs(c); };
            } else if (form == 1) {
                var.source_text = rule.params[j] + " * 2";
                var.compute = [j](const Binding& b) { return b[j] * 2; };
            } else {
                var.source_text = rule.params[j] + " - 3";
                var.compute = [j](const Binding& b) { return b[j] - 3; };
            }
            conjuncts.push_back(rule.params[i] + " = " + var.source_text);
        } else {
            std::set<int64_t> dom;
            int n = dsize(rng);
            while (static_cast<int>(dom.size()) < n) dom.insert(dval(rng));
            var.domain.assign(dom.begin(), dom.end());  // ascending = canonical
            var.source_text = set_literal(var.domain);
            conjuncts.push_back(rule.params[i] + " : " + var.source_text);
        }
        rule.vars.push_back(std::move(var));
    }

    // residual filters over already-introduced variables
    auto comparison = [&](int upto) -> std::pair<std::string, std::function<bool(const Binding&)>> {
        int a = std::uniform_int_distribution<int>(0, upto)(rng);
        int b = std::uniform_int_distribution<int>(0, upto)(rng);
        int64_t c = dval(rng);
        switch (pct(rng) % 6) {
            case 0:
                return {rule.params[a] + " < " + rule.params[b],
                        [a, b](const Binding& v) { return v[a] < v[b]; }};
            case 1:
                return {rule.params[a] + " /= " + rule.params[b],
                        [a, b](const Binding& v) { return v[a] != v[b]; }};
            case 2:
                return {rule.params[a] + " <= " + std::to_string(c),
                        [a, c](const Binding& v) { return v[a] <= c; }};
            case 3:
                return {rule.params[a] + " + " + rule.params[b] + " >= 0",
                        [a, b](const Binding& v) { return v[a] + v[b] >= 0; }};
            case 4: {
                int64_t m = std::uniform_int_distribution<int64_t>(1, 5)(rng);
                int64_t r = std::uniform_int_distribution<int64_t>(0, m - 1)(rng);
                // operands are kept nonnegative so C++ '%' agrees with the
                // engine's truncation semantics
                return {"(" + rule.params[a] + " * " + rule.params[a] + ") mod " +
                            std::to_string(m) + " = " + std::to_string(r),
                        [a, m, r](const Binding& v) { return (v[a] * v[a]) % m == r; }};
            }
            default:
                return {rule.params[a] + " > " + rule.params[b],
                        [a, b](const Binding& v) { return v[a] > v[b]; }};
        }
    };

    int nfilters = pct(rng) % 3;
    for (int i = 0; i < nfilters; ++i) {
        auto [text, fn] = comparison(k - 1);
        conjuncts.push_back(text);
        rule.filters.push_back(fn);
    }

    std::ostringstream where;
    for (size_t i = 0; i < conjuncts.size(); ++i) {
        if (i) where << " & ";
        where << conjuncts[i];
    }
    rule.where_text = where.str();

    if (pct(rng) < 25) {
        // membership expectation
        std::set<int64_t> dom;
        int n = dsize(rng);
        while (static_cast<int>(dom.size()) < n) dom.insert(dval(rng));
        std::vector<int64_t> elems(dom.begin(), dom.end());
        int a = std::uniform_int_distribution<int>(0, k - 1)(rng);
        rule.expected_text = rule.params[a] + " : " + set_literal(elems);
        rule.expected = [a, elems](const Binding& v) {
            return std::binary_search(elems.begin(), elems.end(), v[a]);
        };
    } else {
        auto [text, fn] = comparison(k - 1);
        rule.expected_text = text;
        rule.expected = fn;
    }
    return rule;
}

std::string random_typed_expr(std::mt19937& rng, int family, int depth) {
    std::uniform_int_distribution<int> pick(0, 99);
    std::uniform_int_distribution<int64_t> small(0, 9);
    auto lit = [&]() { return std::to_string(small(rng)); };

    if (family == 0) {  // INT
        if (depth <= 0) return lit();
        switch (pick(rng) % 10) {
            case 0: return "(" + random_typed_expr(rng, 0, depth - 1) + " + " +
                           random_typed_expr(rng, 0, depth - 1) + ")";
            case 1: return "(" + random_typed_expr(rng, 0, depth - 1) + " - " +
                           random_typed_expr(rng, 0, depth - 1) + ")";
            case 2: return "(" + random_typed_expr(rng, 0, depth - 1) + " * " +
                           random_typed_expr(rng, 0, depth - 1) + ")";
            case 3: return "(" + random_typed_expr(rng, 0, depth - 1) + " / " +
                           random_typed_expr(rng, 0, depth - 1) + ")";
            case 4: return "(" + random_typed_expr(rng, 0, depth - 1) + " mod " +
                           random_typed_expr(rng, 0, depth - 1) + ")";
            case 5: return "card(" + random_typed_expr(rng, 1, depth - 1) + ")";
            case 6: return "min(" + random_typed_expr(rng, 1, depth - 1) + ")";
            case 7: return "max(" + random_typed_expr(rng, 1, depth - 1) + ")";
            case 8: return "size(" + random_typed_expr(rng, 2, depth - 1) + ")";
            default: return "(" + random_typed_expr(rng, 2, depth - 1) + ")(" +
                            random_typed_expr(rng, 0, depth - 1) + ")";
        }
    }
    if (family == 1) {  // set of INT
        if (depth <= 0) {
            switch (pick(rng) % 3) {
                case 0: return "{}";
                case 1: return "{" + lit() + ", " + lit() + "}";
                default: return lit() + ".." + lit();
            }
        }
        switch (pick(rng) % 7) {
            case 0: return "(" + random_typed_expr(rng, 1, depth - 1) + " \\/ " +
                           random_typed_expr(rng, 1, depth - 1) + ")";
            case 1: return "(" + random_typed_expr(rng, 1, depth - 1) + " /\\ " +
                           random_typed_expr(rng, 1, depth - 1) + ")";
            case 2: return "(" + random_typed_expr(rng, 1, depth - 1) + " - " +
                           random_typed_expr(rng, 1, depth - 1) + ")";
            case 3: return "dom(" + random_typed_expr(rng, 2, depth - 1) + ")";
            case 4: return "ran(" + random_typed_expr(rng, 2, depth - 1) + ")";
            case 5: return "(" + random_typed_expr(rng, 2, depth - 1) + ")[" +
                           random_typed_expr(rng, 1, depth - 1) + "]";
            default: return "{x | x : " + random_typed_expr(rng, 1, depth - 1) +
                            " & x mod 2 = 0}";
        }
    }
    // relation INT <-> INT
    if (depth <= 0) {
        switch (pick(rng) % 2) {
            case 0: return "{" + lit() + " |-> " + lit() + ", " + lit() + " |-> " + lit() + "}";
            default: return "({" + lit() + "} * {" + lit() + "})";
        }
    }
    switch (pick(rng) % 7) {
        case 0: return "(" + random_typed_expr(rng, 2, depth - 1) + " <+ " +
                       random_typed_expr(rng, 2, depth - 1) + ")";
        case 1: return "(" + random_typed_expr(rng, 2, depth - 1) + " ; " +
                       random_typed_expr(rng, 2, depth - 1) + ")";
        case 2: return "(" + random_typed_expr(rng, 2, depth - 1) + ")~";
        case 3: return "(" + random_typed_expr(rng, 1, depth - 1) + " <| " +
                       random_typed_expr(rng, 2, depth - 1) + ")";
        case 4: return "(" + random_typed_expr(rng, 2, depth - 1) + " |> " +
                       random_typed_expr(rng, 1, depth - 1) + ")";
        case 5: return "(" + random_typed_expr(rng, 1, depth - 1) + " * " +
                       random_typed_expr(rng, 1, depth - 1) + ")";
        default: return "%x.(x : " + random_typed_expr(rng, 1, depth - 1) + " | x + 1)";
    }
}

}  // namespace bcheck::testing
