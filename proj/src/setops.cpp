#include "bcheck/setops.hpp"

#include <algorithm>

namespace bcheck {

namespace {

// range of pairs in r whose first component equals key
std::pair<const Value*, const Value*> pairs_with_first(const std::vector<Value>& rel,
                                                       const Value& key) {
    auto lo = std::lower_bound(rel.begin(), rel.end(), key, [](const Value& p, const Value& k) {
        return value_lt(p.as_pair().first, k);
    });
    auto hi = std::upper_bound(lo, rel.end(), key, [](const Value& k, const Value& p) {
        return value_lt(k, p.as_pair().first);
    });
    const Value* base = rel.data();
    return {base + (lo - rel.begin()), base + (hi - rel.begin())};
}

}  // namespace

Value apply_fn(const Value& f, const Value& x) {
    const auto& rel = f.as_set();
    auto [lo, hi] = pairs_with_first(rel, x);
    if (lo == hi)
        throw ValueOpError{EvalErrorKind::WdApplyOutsideDomain,
                           "function applied outside its domain",
                           render_value(x, RenderMode::Machine)};
    if (hi - lo > 1)
        throw ValueOpError{EvalErrorKind::WdNotFunctional,
                           "relation is not functional at the argument",
                           render_value(x, RenderMode::Machine)};
    return lo->as_pair().second;
}

Value set_union(const Value& a, const Value& b) {
    const auto& x = a.as_set();
    const auto& y = b.as_set();
    std::vector<Value> out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        switch (canonical_compare(x[i], y[j])) {
            case Ordering::Less: out.push_back(x[i++]); break;
            case Ordering::Greater: out.push_back(y[j++]); break;
            case Ordering::Equal:
                out.push_back(x[i++]);
                ++j;
                break;
        }
    }
    out.insert(out.end(), x.begin() + i, x.end());
    out.insert(out.end(), y.begin() + j, y.end());
    return Value::set_canonical(std::move(out));
}

Value set_inter(const Value& a, const Value& b) {
    const auto& x = a.as_set();
    const auto& y = b.as_set();
    std::vector<Value> out;
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        switch (canonical_compare(x[i], y[j])) {
            case Ordering::Less: ++i; break;
            case Ordering::Greater: ++j; break;
            case Ordering::Equal:
                out.push_back(x[i++]);
                ++j;
                break;
        }
    }
    return Value::set_canonical(std::move(out));
}

Value set_minus(const Value& a, const Value& b) {
    const auto& x = a.as_set();
    const auto& y = b.as_set();
    std::vector<Value> out;
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        switch (canonical_compare(x[i], y[j])) {
            case Ordering::Less: out.push_back(x[i++]); break;
            case Ordering::Greater: ++j; break;
            case Ordering::Equal:
                ++i;
                ++j;
                break;
        }
    }
    out.insert(out.end(), x.begin() + i, x.end());
    return Value::set_canonical(std::move(out));
}

Value cartesian(const Value& a, const Value& b, int64_t limit) {
    const auto& x = a.as_set();
    const auto& y = b.as_set();
    if (!x.empty() && !y.empty() &&
        static_cast<uint64_t>(x.size()) > static_cast<uint64_t>(limit) / y.size())
        throw ValueOpError{EvalErrorKind::ResourceLimit,
                           "cartesian product would exceed the set cardinality limit (" +
                               std::to_string(limit) + " elements)",
                           ""};
    std::vector<Value> out;
    out.reserve(x.size() * y.size());
    for (const auto& u : x)
        for (const auto& v : y) out.push_back(Value::pair(u, v));
    // nested loop over canonical inputs emits pairs in canonical order
    return Value::set_canonical(std::move(out));
}

Value interval(int64_t lo, int64_t hi, int64_t limit) {
    if (lo > hi) return Value::empty_set();
    unsigned __int128 count =
        static_cast<unsigned __int128>(static_cast<__int128>(hi) - lo) + 1;
    if (count > static_cast<unsigned __int128>(limit))
        throw ValueOpError{EvalErrorKind::ResourceLimit,
                           "interval would exceed the set cardinality limit (" +
                               std::to_string(limit) + " elements)",
                           std::to_string(lo) + ".." + std::to_string(hi)};
    std::vector<Value> out;
    out.reserve(count);
    for (int64_t v = lo;; ++v) {
        out.push_back(Value::integer(v));
        if (v == hi) break;
    }
    return Value::set_canonical(std::move(out));
}

Value rel_dom(const Value& r) {
    const auto& rel = r.as_set();
    std::vector<Value> out;
    out.reserve(rel.size());
    for (const auto& p : rel) {
        const Value& first = p.as_pair().first;
        if (out.empty() || !value_eq(out.back(), first)) out.push_back(first);
    }
    return Value::set_canonical(std::move(out));
}

Value rel_ran(const Value& r) {
    const auto& rel = r.as_set();
    std::vector<Value> out;
    out.reserve(rel.size());
    for (const auto& p : rel) out.push_back(p.as_pair().second);
    return mk_set(std::move(out));
}

Value rel_inverse(const Value& r) {
    const auto& rel = r.as_set();
    std::vector<Value> out;
    out.reserve(rel.size());
    for (const auto& p : rel) out.push_back(Value::pair(p.as_pair().second, p.as_pair().first));
    return mk_set(std::move(out));
}

Value rel_image(const Value& r, const Value& s) {
    const auto& rel = r.as_set();
    std::vector<Value> out;
    for (const auto& key : s.as_set()) {
        auto [lo, hi] = pairs_with_first(rel, key);
        for (auto* p = lo; p != hi; ++p) out.push_back(p->as_pair().second);
    }
    return mk_set(std::move(out));
}

Value rel_compose(const Value& r1, const Value& r2) {
    const auto& rel2 = r2.as_set();
    std::vector<Value> out;
    for (const auto& p : r1.as_set()) {
        auto [lo, hi] = pairs_with_first(rel2, p.as_pair().second);
        for (auto* q = lo; q != hi; ++q)
            out.push_back(Value::pair(p.as_pair().first, q->as_pair().second));
    }
    return mk_set(std::move(out));
}

Value rel_override(const Value& f, const Value& g) {
    Value gdom = rel_dom(g);
    std::vector<Value> out;
    for (const auto& p : f.as_set())
        if (!set_member(p.as_pair().first, gdom)) out.push_back(p);
    for (const auto& p : g.as_set()) out.push_back(p);
    return mk_set(std::move(out));
}

Value dom_restrict(const Value& s, const Value& r) {
    std::vector<Value> out;
    for (const auto& p : r.as_set())
        if (set_member(p.as_pair().first, s)) out.push_back(p);
    return Value::set_canonical(std::move(out));
}

Value dom_subtract(const Value& s, const Value& r) {
    std::vector<Value> out;
    for (const auto& p : r.as_set())
        if (!set_member(p.as_pair().first, s)) out.push_back(p);
    return Value::set_canonical(std::move(out));
}

Value ran_restrict(const Value& r, const Value& s) {
    std::vector<Value> out;
    for (const auto& p : r.as_set())
        if (set_member(p.as_pair().second, s)) out.push_back(p);
    return Value::set_canonical(std::move(out));
}

Value ran_subtract(const Value& r, const Value& s) {
    std::vector<Value> out;
    for (const auto& p : r.as_set())
        if (!set_member(p.as_pair().second, s)) out.push_back(p);
    return Value::set_canonical(std::move(out));
}

int64_t set_card(const Value& s) { return static_cast<int64_t>(s.as_set().size()); }

int64_t set_min(const Value& s) {
    const auto& elems = s.as_set();
    if (elems.empty())
        throw ValueOpError{EvalErrorKind::WdEmptyMinMax, "min of the empty set", ""};
    return elems.front().as_int();
}

int64_t set_max(const Value& s) {
    const auto& elems = s.as_set();
    if (elems.empty())
        throw ValueOpError{EvalErrorKind::WdEmptyMinMax, "max of the empty set", ""};
    return elems.back().as_int();
}

bool is_sequence(const Value& s) {
    const auto& elems = s.as_set();
    for (size_t i = 0; i < elems.size(); ++i) {
        if (elems[i].kind() != Value::Kind::Pair) return false;
        const Value& first = elems[i].as_pair().first;
        if (first.kind() != Value::Kind::Int) return false;
        // canonical order sorts by first component, so a total function on
        // 1..n has firsts exactly 1,2,...,n
        if (first.as_int() != static_cast<int64_t>(i) + 1) return false;
    }
    return true;
}

namespace {
void require_sequence(const Value& s, const char* op) {
    if (!is_sequence(s))
        throw ValueOpError{EvalErrorKind::WdNotASequence,
                           std::string(op) + " applied to a set that is not a sequence",
                           render_value(s, RenderMode::Machine)};
}
}  // namespace

int64_t seq_size(const Value& s) {
    require_sequence(s, "size");
    return static_cast<int64_t>(s.as_set().size());
}

Value seq_first(const Value& s) {
    require_sequence(s, "first");
    const auto& elems = s.as_set();
    if (elems.empty())
        throw ValueOpError{EvalErrorKind::WdEmptyMinMax, "first of the empty sequence", ""};
    return elems.front().as_pair().second;
}

Value seq_last(const Value& s) {
    require_sequence(s, "last");
    const auto& elems = s.as_set();
    if (elems.empty())
        throw ValueOpError{EvalErrorKind::WdEmptyMinMax, "last of the empty sequence", ""};
    return elems.back().as_pair().second;
}

bool set_member(const Value& elem, const Value& s) {
    const auto& elems = s.as_set();
    return std::binary_search(elems.begin(), elems.end(), elem, value_lt);
}

bool set_subset(const Value& a, const Value& b) {
    const auto& x = a.as_set();
    const auto& y = b.as_set();
    if (x.size() > y.size()) return false;
    size_t j = 0;
    for (const auto& e : x) {
        while (j < y.size() && value_lt(y[j], e)) ++j;
        if (j == y.size() || !value_eq(y[j], e)) return false;
        ++j;
    }
    return true;
}

}  // namespace bcheck
