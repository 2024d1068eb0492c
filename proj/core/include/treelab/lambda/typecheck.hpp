#pragma once

#include <map>
#include <optional>

#include "treelab/lambda/term.hpp"

namespace treelab::lambda {

/// The minimal-environment typing of a term: the environment's domain is
/// exactly the free variables. `order` and `internal_arity` are the maxima
/// of ord/iar over the types of all judgments in the (unique) derivation.
struct Judgment {
  std::map<std::string, SimpleType> env;
  SimpleType type;
  int order = 0;
  int internal_arity = 0;
};

/// Infers the unique minimal-environment judgment when one exists. Types of
/// free variables left unconstrained default to the base type. Returns
/// nullopt when the term is untypable (including type clashes between
/// occurrences of a shared variable).
std::optional<Judgment> typecheck(const LambdaTerm& t);

inline int judgment_order(const Judgment& j) { return j.order; }
inline int judgment_iar(const Judgment& j) { return j.internal_arity; }

}  // namespace treelab::lambda
