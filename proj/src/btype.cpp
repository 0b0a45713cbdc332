#include "bcheck/btype.hpp"

namespace bcheck {

namespace {
BTypePtr make(BType::Kind k, BTypePtr a = nullptr, BTypePtr b = nullptr) {
    auto t = std::make_shared<BType>();
    t->kind = k;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}
}  // namespace

BTypePtr t_int() {
    static const BTypePtr t = make(BType::Kind::Int);
    return t;
}
BTypePtr t_bool() {
    static const BTypePtr t = make(BType::Kind::Bool);
    return t;
}
BTypePtr t_string() {
    static const BTypePtr t = make(BType::Kind::String);
    return t;
}
BTypePtr t_pair(BTypePtr a, BTypePtr b) { return make(BType::Kind::Pair, std::move(a), std::move(b)); }
BTypePtr t_set(BTypePtr elem) { return make(BType::Kind::Set, std::move(elem)); }
BTypePtr t_seq(BTypePtr elem) { return t_set(t_pair(t_int(), std::move(elem))); }

bool type_equal(const BType& a, const BType& b) {
    if (a.kind != b.kind) return false;
    if (a.a && !type_equal(*a.a, *b.a)) return false;
    if (a.b && !type_equal(*a.b, *b.b)) return false;
    return true;
}

std::string type_str(const BType& t) {
    switch (t.kind) {
        case BType::Kind::Int: return "INT";
        case BType::Kind::Bool: return "BOOL";
        case BType::Kind::String: return "STRING";
        case BType::Kind::Pair: return "(" + type_str(*t.a) + "*" + type_str(*t.b) + ")";
        case BType::Kind::Set: return "POW(" + type_str(*t.a) + ")";
    }
    return "?";
}

}  // namespace bcheck
