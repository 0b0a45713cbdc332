#pragma once

#include <memory>
#include <string>

namespace bcheck {

// Types of the mathematical language: INT, BOOL, STRING, pairs and finite
// sets. Sequences are sets of pairs over (INT, T); they have no kind of
// their own.
struct BType;
using BTypePtr = std::shared_ptr<const BType>;

struct BType {
    enum class Kind { Int, Bool, String, Pair, Set };
    Kind kind;
    BTypePtr a;  // Pair first / Set element
    BTypePtr b;  // Pair second
};

BTypePtr t_int();
BTypePtr t_bool();
BTypePtr t_string();
BTypePtr t_pair(BTypePtr a, BTypePtr b);
BTypePtr t_set(BTypePtr elem);
// seq(T) = POW(INT*T)
BTypePtr t_seq(BTypePtr elem);

bool type_equal(const BType& a, const BType& b);
std::string type_str(const BType& t);

}  // namespace bcheck
