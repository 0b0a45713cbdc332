// Finite set / relation / function / sequence algebra over canonical values.
// All results are canonical. Failures carry no source location; the evaluator
// attaches one.
#pragma once

#include <cstdint>

#include "bcheck/value.hpp"

namespace bcheck {

struct ValueOpError {
    EvalErrorKind kind;
    std::string message;
    std::string witness;
};

// f(x) for a set of pairs f: the unique b with (x|->b) in f.
Value apply_fn(const Value& f, const Value& x);

Value set_union(const Value& a, const Value& b);
Value set_inter(const Value& a, const Value& b);
Value set_minus(const Value& a, const Value& b);
// a * b, materialized; throws ResourceLimit past `limit` elements.
Value cartesian(const Value& a, const Value& b, int64_t limit);
// a..b ({} when a > b); same limit discipline.
Value interval(int64_t lo, int64_t hi, int64_t limit);

Value rel_dom(const Value& r);
Value rel_ran(const Value& r);
Value rel_inverse(const Value& r);
Value rel_image(const Value& r, const Value& s);
Value rel_compose(const Value& r1, const Value& r2);
Value rel_override(const Value& f, const Value& g);
Value dom_restrict(const Value& s, const Value& r);
Value dom_subtract(const Value& s, const Value& r);
Value ran_restrict(const Value& r, const Value& s);
Value ran_subtract(const Value& r, const Value& s);

int64_t set_card(const Value& s);
int64_t set_min(const Value& s);
int64_t set_max(const Value& s);

// Sequences are exactly the total functions on 1..n.
bool is_sequence(const Value& s);
int64_t seq_size(const Value& s);
Value seq_first(const Value& s);
Value seq_last(const Value& s);

bool set_member(const Value& elem, const Value& s);
bool set_subset(const Value& a, const Value& b);

}  // namespace bcheck
