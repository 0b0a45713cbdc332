#include "bcheck/value.hpp"

#include <algorithm>

namespace bcheck {

Value Value::str(std::string s) {
    Value v;
    v.v_ = std::make_shared<const std::string>(std::move(s));
    return v;
}

Value Value::pair(Value first, Value second) {
    Value v;
    v.v_ = std::make_shared<const PairVal>(PairVal{std::move(first), std::move(second)});
    return v;
}

Value Value::set(std::vector<Value> elems) { return mk_set(std::move(elems)); }

Value Value::set_canonical(std::vector<Value> elems) {
    Value v;
    v.v_ = std::make_shared<const std::vector<Value>>(std::move(elems));
    return v;
}

Value Value::empty_set() {
    static const SetRef empty = std::make_shared<const std::vector<Value>>();
    Value v;
    v.v_ = empty;
    return v;
}

int64_t Value::as_int() const {
    if (auto* p = std::get_if<int64_t>(&v_)) return *p;
    throw InternalError("value is not an integer");
}

bool Value::as_bool() const {
    if (auto* p = std::get_if<bool>(&v_)) return *p;
    throw InternalError("value is not a boolean");
}

const std::string& Value::as_str() const {
    if (auto* p = std::get_if<StrRef>(&v_)) return **p;
    throw InternalError("value is not a string");
}

const PairVal& Value::as_pair() const {
    if (auto* p = std::get_if<PairRef>(&v_)) return **p;
    throw InternalError("value is not a pair");
}

const std::vector<Value>& Value::as_set() const {
    if (auto* p = std::get_if<SetRef>(&v_)) return **p;
    throw InternalError("value is not a set");
}

bool Value::is_canonical() const {
    if (kind() == Kind::Pair) {
        const PairVal& p = as_pair();
        return p.first.is_canonical() && p.second.is_canonical();
    }
    if (kind() == Kind::Set) {
        const auto& elems = as_set();
        for (size_t i = 0; i < elems.size(); ++i) {
            if (!elems[i].is_canonical()) return false;
            if (i > 0 && canonical_compare(elems[i - 1], elems[i]) != Ordering::Less) return false;
        }
    }
    return true;
}

Ordering canonical_compare(const Value& a, const Value& b) {
    auto ka = a.kind(), kb = b.kind();
    if (ka != kb) return ka < kb ? Ordering::Less : Ordering::Greater;
    switch (ka) {
        case Value::Kind::Int: {
            int64_t x = a.as_int(), y = b.as_int();
            if (x < y) return Ordering::Less;
            if (x > y) return Ordering::Greater;
            return Ordering::Equal;
        }
        case Value::Kind::Bool: {
            bool x = a.as_bool(), y = b.as_bool();
            if (x == y) return Ordering::Equal;
            return x ? Ordering::Greater : Ordering::Less;
        }
        case Value::Kind::Str: {
            int c = a.as_str().compare(b.as_str());
            if (c < 0) return Ordering::Less;
            if (c > 0) return Ordering::Greater;
            return Ordering::Equal;
        }
        case Value::Kind::Pair: {
            const PairVal& x = a.as_pair();
            const PairVal& y = b.as_pair();
            Ordering first = canonical_compare(x.first, y.first);
            if (first != Ordering::Equal) return first;
            return canonical_compare(x.second, y.second);
        }
        case Value::Kind::Set: {
            const auto& x = a.as_set();
            const auto& y = b.as_set();
            size_t n = std::min(x.size(), y.size());
            for (size_t i = 0; i < n; ++i) {
                Ordering o = canonical_compare(x[i], y[i]);
                if (o != Ordering::Equal) return o;
            }
            if (x.size() < y.size()) return Ordering::Less;
            if (x.size() > y.size()) return Ordering::Greater;
            return Ordering::Equal;
        }
    }
    return Ordering::Equal;
}

bool value_eq(const Value& a, const Value& b) { return canonical_compare(a, b) == Ordering::Equal; }
bool value_lt(const Value& a, const Value& b) { return canonical_compare(a, b) == Ordering::Less; }

Value mk_set(std::vector<Value> elems) {
    std::sort(elems.begin(), elems.end(), value_lt);
    elems.erase(std::unique(elems.begin(), elems.end(), value_eq), elems.end());
    elems.shrink_to_fit();
    return Value::set_canonical(std::move(elems));
}

std::string render_value(const Value& v, RenderMode mode) {
    switch (v.kind()) {
        case Value::Kind::Int: return std::to_string(v.as_int());
        case Value::Kind::Bool: return v.as_bool() ? "TRUE" : "FALSE";
        case Value::Kind::Str:
            if (mode == RenderMode::Machine) return "\"" + v.as_str() + "\"";
            return v.as_str();
        case Value::Kind::Pair: {
            const PairVal& p = v.as_pair();
            return "(" + render_value(p.first, mode) + "|->" + render_value(p.second, mode) + ")";
        }
        case Value::Kind::Set: {
            std::string out = "{";
            const auto& elems = v.as_set();
            for (size_t i = 0; i < elems.size(); ++i) {
                if (i) out += ",";
                out += render_value(elems[i], mode);
            }
            out += "}";
            return out;
        }
    }
    return "?";
}

}  // namespace bcheck
