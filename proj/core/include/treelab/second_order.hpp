#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "treelab/grammar.hpp"

namespace treelab {

/// Description of one second-order hole: it accepts a k-context of the
/// declared size, optionally constrained to a context type.
struct HoleSpec {
  int arity = 0;
  int declared_size = 0;
  std::optional<ContextType> type;
};

/// A template tree whose hole nodes accept contexts of a declared arity and
/// size (optionally typed). A hole of arity k has k children. The size of a
/// second-order context includes the declared sizes of its holes, so filling
/// preserves size. Immutable, structure-sharing.
class SecondOrderContext {
 public:
  static SecondOrderContext term(std::string symbol, std::vector<SecondOrderContext> children);
  static SecondOrderContext hole(HoleSpec spec, std::vector<SecondOrderContext> children);
  static SecondOrderContext from_tree(const Tree& t);

  bool is_hole() const { return node_->is_hole; }
  const HoleSpec& spec() const { return node_->spec; }
  const std::string& symbol() const { return node_->symbol; }
  const std::vector<SecondOrderContext>& children() const { return node_->children; }

  /// Size including declared hole sizes.
  int size() const { return node_->size; }
  /// Number of second-order holes.
  int hole_count() const { return node_->holes; }

  /// Hole specs in depth-first left-to-right order.
  std::vector<HoleSpec> holes() const;

  /// Replaces the leftmost second-order hole with a first-order context,
  /// grafting the hole's children into the context's first-order holes.
  /// Checks arity, declared size, and type annotation (membership checks
  /// against a grammar are the caller's concern; here the type is compared
  /// only if `part` came with a claimed type via recompose()).
  SecondOrderContext fill_first(const Context& part) const;

  /// Strips type annotations.
  SecondOrderContext untyped() const;

  /// Converts to a first-order tree; requires hole_count() == 0.
  Tree to_tree() const;

  std::string str() const;

  bool operator==(const SecondOrderContext& other) const;
  std::strong_ordering operator<=>(const SecondOrderContext& other) const;
  bool operator<(const SecondOrderContext& other) const {
    return (*this <=> other) == std::strong_ordering::less;
  }

 private:
  struct Node {
    bool is_hole = false;
    std::string symbol;
    HoleSpec spec;
    std::vector<SecondOrderContext> children;
    int size = 0;
    int holes = 0;
  };
  explicit SecondOrderContext(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Fills every hole in order. Throws naming the 1-based hole index on an
/// arity or size mismatch; when `check_types` is set, also requires each part
/// to inhabit the annotated context type of its hole under `g`.
SecondOrderContext recompose(const SecondOrderContext& e, std::span<const Context> parts);
SecondOrderContext recompose(const SecondOrderContext& e, std::initializer_list<Context> parts);

}  // namespace treelab
