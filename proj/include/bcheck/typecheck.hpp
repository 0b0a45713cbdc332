#pragma once

#include <map>
#include <string>
#include <vector>

#include "bcheck/ast.hpp"
#include "bcheck/btype.hpp"

namespace bcheck {

using TypeEnv = std::map<std::string, BTypePtr>;

// Unification-based type inference. Annotates every expression node with its
// type; rewrites Sub into SetMinus and Mul into Cartesian where both operands
// are sets. Bound variables (quantifiers, comprehensions, lambdas, and rule
// parameters pushed via push_params) get their types inferred from use.
// Throws SemanticError on unknown names and type mismatches.
class TypeChecker {
public:
    explicit TypeChecker(const TypeEnv& globals);
    ~TypeChecker();

    // Declares rule parameters whose types are to be inferred. Scopes nest.
    void push_params(const std::vector<std::string>& names);
    void pop_params();

    // Infers and records types; call finalize afterwards to write them back.
    void check(Pred& p);
    void check(Expr& e);

    // Resolves inferred types into the AST nodes. Unconstrained type
    // variables default to INT (only reachable through empty sets).
    void finalize(Pred& p);
    void finalize(Expr& e);

    // Type a declared parameter resolved to; valid after check().
    BTypePtr param_type(const std::string& name);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot helpers: all free names of the AST must be present in env.
void typecheck(Pred& p, const TypeEnv& env);
BTypePtr typecheck(Expr& e, const TypeEnv& env);

}  // namespace bcheck
