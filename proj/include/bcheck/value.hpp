// Runtime values: 64-bit integers, booleans, strings, pairs and canonically
// ordered finite sets. Values are immutable and cheap to copy (shared
// internals), so they can be shared freely across concurrent rule checks.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bcheck/errors.hpp"

namespace bcheck {

class Value;

struct PairVal;
using StrRef = std::shared_ptr<const std::string>;
using PairRef = std::shared_ptr<const PairVal>;
using SetRef = std::shared_ptr<const std::vector<Value>>;

enum class Ordering { Less, Equal, Greater };

class Value {
public:
    enum class Kind { Int, Bool, Str, Pair, Set };

    Value() : v_(int64_t{0}) {}

    static Value integer(int64_t i) { return Value(i); }
    static Value boolean(bool b) { return Value(b); }
    static Value str(std::string s);
    static Value pair(Value first, Value second);
    // Sorts and deduplicates unless the caller guarantees canonical order.
    static Value set(std::vector<Value> elems);
    static Value set_canonical(std::vector<Value> elems);
    static Value empty_set();

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_set() const { return kind() == Kind::Set; }

    int64_t as_int() const;
    bool as_bool() const;
    const std::string& as_str() const;
    const PairVal& as_pair() const;
    const std::vector<Value>& as_set() const;

    // Checks the canonical-form invariants recursively (test support).
    bool is_canonical() const;

private:
    explicit Value(int64_t i) : v_(i) {}
    explicit Value(bool b) : v_(b) {}

    std::variant<int64_t, bool, StrRef, PairRef, SetRef> v_;
};

struct PairVal {
    Value first;
    Value second;
};

// Total order on values. Within one type: integers numerically; FALSE < TRUE;
// strings lexicographically on UTF-8 bytes; pairs lexicographically; sets
// lexicographically on their canonical element lists. Across kinds (which
// typechecked programs never compare) the kind index decides.
Ordering canonical_compare(const Value& a, const Value& b);
bool value_eq(const Value& a, const Value& b);
bool value_lt(const Value& a, const Value& b);

// Canonical set construction: sort under canonical_compare, drop duplicates.
Value mk_set(std::vector<Value> elems);

enum class RenderMode {
    Message,  // strings bare, for counterexample messages
    Machine,  // strings double-quoted, for machine reports
};

std::string render_value(const Value& v, RenderMode mode);

}  // namespace bcheck
