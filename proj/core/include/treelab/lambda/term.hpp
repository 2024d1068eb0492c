#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "treelab/lambda/types.hpp"

namespace treelab::lambda {

/// A lambda term: variable, Church-style annotated abstraction (whose binder
/// may be the unused binder `*`, which never occurs in the body), or
/// application. Immutable and structure-sharing.
class LambdaTerm {
 public:
  enum class Kind { Var, Abs, App };

  static LambdaTerm var(std::string name);
  /// `binder == nullopt` is the unused binder `*`.
  static LambdaTerm abs(std::optional<std::string> binder, SimpleType type, LambdaTerm body);
  static LambdaTerm app(LambdaTerm fn, LambdaTerm arg);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }            // Var
  const std::optional<std::string>& binder() const { return node_->binder_name; }  // Abs
  const SimpleType& binder_type() const { return node_->type; }      // Abs
  const LambdaTerm& body() const { return node_->sub[0]; }           // Abs
  const LambdaTerm& fn() const { return node_->sub[0]; }             // App
  const LambdaTerm& arg() const { return node_->sub[1]; }            // App

  /// |x| = 1, |\x.t| = |t| + 1, |t1 t2| = |t1| + |t2| + 1.
  int size() const { return node_->size; }

  const std::set<std::string>& free_vars() const { return node_->free; }

  /// Literal syntax: `\x:T.t`, `\*:T.t`, juxtaposition (left-assoc), parens.
  std::string str() const;
  static LambdaTerm parse(std::string_view text);

  /// Structural equality including binder names and annotations.
  bool operator==(const LambdaTerm& other) const;
  bool operator!=(const LambdaTerm& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    std::string name;                        // Var
    std::optional<std::string> binder_name;  // Abs
    SimpleType type;                         // Abs annotation
    std::vector<LambdaTerm> sub;
    int size = 0;
    std::set<std::string> free;
  };
  explicit LambdaTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Alpha-equivalence, treating `*` as an ordinary (never-occurring) binder
/// name and requiring annotation equality.
bool alpha_eq(const LambdaTerm& a, const LambdaTerm& b);

/// A canonical string for the alpha-class of `t` (de Bruijn indices plus
/// annotations); used as a memo key.
std::string alpha_key(const LambdaTerm& t);

/// Swaps every occurrence (free, bound, and binding) of names `a` and `b`.
LambdaTerm swap_names(const LambdaTerm& t, const std::string& a, const std::string& b);

/// The canonical renaming with the unbounded pool x1, x2, ...: unused
/// binders become `*`, used binders take the least pool name not free in
/// the abstraction. Free variables keep their names.
LambdaTerm rename_minimal(const LambdaTerm& t);

/// Minimum number of distinct variable names over all alpha-variants.
int num_vars(const LambdaTerm& t);

}  // namespace treelab::lambda
