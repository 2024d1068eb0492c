#pragma once

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treelab/alphabet.hpp"

namespace treelab {

/// A tree over a ranked alphabet extended with the distinguished nullary
/// hole symbol. A 0-context is an ordinary tree; `Tree` below is an alias
/// that documents that intent. Values are immutable and share structure,
/// so copies are cheap and thread-safe.
class Context {
 public:
  /// The hole, written `_` in literals.
  static Context hole();
  /// A nullary terminal.
  static Context leaf(std::string symbol);
  /// A terminal with children. The arity is whatever `children.size()` says;
  /// rank-checking against an alphabet is a separate validation step.
  static Context node(std::string symbol, std::vector<Context> children);

  bool is_hole() const { return node_->hole; }
  const std::string& symbol() const { return node_->symbol; }
  const std::vector<Context>& children() const { return node_->children; }

  /// Number of terminal occurrences. Holes contribute 0.
  int size() const { return node_->size; }
  /// Number of hole occurrences.
  int hole_count() const { return node_->holes; }
  bool is_tree() const { return hole_count() == 0; }
  bool is_affine() const { return hole_count() <= 1; }
  bool is_linear() const { return hole_count() == 1; }

  /// Replaces the i-th hole (depth-first left-to-right, 1-based) with each
  /// part in order. `parts.size()` must equal `hole_count()`.
  Context fill(std::span<const Context> parts) const;
  Context fill(std::initializer_list<Context> parts) const;
  /// Replaces only hole number `index` (1-based), leaving the others.
  Context fill_at(const Context& part, int index) const;

  /// Checks that every terminal is used at its declared rank.
  void validate(const RankedAlphabet& alphabet) const;

  /// Canonical literal: `a(b(c),c)`, hole spelled `_`, nullary without `()`.
  std::string str() const;
  /// Parses a literal. Accepts identifiers `[A-Za-z][A-Za-z0-9_]*` optionally
  /// followed by one brace group `{...}` (used by compound terminal names such
  /// as `lam{x1:o}`); a bare `_` is the hole.
  static Context parse(std::string_view text);

  bool operator==(const Context& other) const;
  bool operator!=(const Context& other) const { return !(*this == other); }
  /// Total order (holes first, then by symbol, then children); used for sets.
  std::strong_ordering operator<=>(const Context& other) const;
  bool operator<(const Context& other) const {
    return (*this <=> other) == std::strong_ordering::less;
  }

 private:
  struct Node {
    std::string symbol;
    bool hole = false;
    std::vector<Context> children;
    int size = 0;
    int holes = 0;
  };
  explicit Context(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Tree = Context;

/// True iff `c` is a subcontext of `c2`: some node of `c2` matches `c`
/// structurally, with the holes of `c` cutting off arbitrary pieces.
bool is_subcontext(const Context& c, const Context& c2);

/// A word is a sequence of alphabet symbols.
using Word = std::vector<std::string>;

/// XML-like serialization of an affine context: one opening and one closing
/// tag per terminal, one square token per hole. Injective on affine contexts;
/// the result has length 2*size for trees and 2*size+1 for 1-contexts.
Word serialize_affine(const Context& u);

/// True iff `w = w1 . pattern . w2` for some words `w1`, `w2`.
bool find_subword(const Word& w, const Word& pattern);

}  // namespace treelab
