// Diagnostic types shared by the lexer, parsers, typechecker and evaluator.
#pragma once

#include <stdexcept>
#include <string>

namespace bcheck {

// 1-based source position. Columns count UTF-8 codepoints, not bytes.
struct SourceLoc {
    int line = 0;
    int column = 0;
};

inline std::string loc_str(const SourceLoc& loc) {
    return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

class Error : public std::runtime_error {
public:
    Error(std::string message, SourceLoc loc)
        : std::runtime_error(loc_str(loc) + ": " + message),
          message_(std::move(message)),
          loc_(loc) {}

    const std::string& message() const { return message_; }
    SourceLoc loc() const { return loc_; }

private:
    std::string message_;
    SourceLoc loc_;
};

class LexError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Semantic load-time failures: unknown names, type mismatches, definition
// cycles, placeholder range errors, duplicate ids.
class SemanticError : public Error {
public:
    using Error::Error;
};

enum class EvalErrorKind {
    WdApplyOutsideDomain,
    WdNotFunctional,
    WdEmptyMinMax,
    WdNotASequence,
    WdDivByZero,
    IntOverflow,
    UnboundedVariable,
    ResourceLimit,
};

const char* eval_error_kind_name(EvalErrorKind kind);

// A well-definedness or resource failure hit while evaluating a rule.
// `witness` holds rendered offending values when they exist (for example the
// argument of a function applied outside its domain).
class EvalError : public Error {
public:
    EvalError(EvalErrorKind kind, std::string message, SourceLoc loc, std::string witness = {})
        : Error(std::move(message), loc), kind_(kind), witness_(std::move(witness)) {}

    EvalErrorKind kind() const { return kind_; }
    const std::string& witness() const { return witness_; }

private:
    EvalErrorKind kind_;
    std::string witness_;
};

// Internal invariant violation (a typechecked term hit a value of the wrong
// shape). Distinct from EvalError so tests can prove it never escapes.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace bcheck
