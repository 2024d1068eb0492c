#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace treelab::lambda {

/// A simple type, represented by its argument list: t1 -> ... -> tn -> o.
/// The base type o has an empty list. Immutable and cheap to copy.
class SimpleType {
 public:
  /// The base type o.
  SimpleType();
  static SimpleType base() { return SimpleType(); }
  static SimpleType arrow(const SimpleType& arg, const SimpleType& result);
  static SimpleType from_args(std::vector<SimpleType> args);

  bool is_base() const { return args_->empty(); }
  const std::vector<SimpleType>& args() const { return *args_; }
  /// First argument; requires !is_base().
  const SimpleType& arg() const { return (*args_)[0]; }
  /// Type after consuming the first argument.
  SimpleType result() const;

  /// ord(t1->...->tn->o) = max(0, max ord(ti)+1).
  int order() const;
  /// iar(t1->...->tn->o) = max(n, max iar(ti)).
  int internal_arity() const;

  /// `o`, `o->o`, `(o->o)->o->o` (arrows right-associative).
  std::string str() const;
  static SimpleType parse(std::string_view text);

  bool operator==(const SimpleType& other) const;
  std::strong_ordering operator<=>(const SimpleType& other) const;
  bool operator<(const SimpleType& o) const { return (*this <=> o) == std::strong_ordering::less; }

 private:
  explicit SimpleType(std::shared_ptr<const std::vector<SimpleType>> args)
      : args_(std::move(args)) {}
  std::shared_ptr<const std::vector<SimpleType>> args_;
};

/// All types with order <= ord and internal arity <= iar, sorted. Empty when
/// ord < 0.
std::vector<SimpleType> types_up_to(int ord, int iar);

}  // namespace treelab::lambda
