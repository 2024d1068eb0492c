#include "treelab/lambda/types.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "treelab/errors.hpp"

namespace treelab::lambda {

SimpleType::SimpleType() {
  static const auto empty = std::make_shared<const std::vector<SimpleType>>();
  args_ = empty;
}

SimpleType SimpleType::arrow(const SimpleType& arg, const SimpleType& result) {
  std::vector<SimpleType> args;
  args.reserve(result.args().size() + 1);
  args.push_back(arg);
  args.insert(args.end(), result.args().begin(), result.args().end());
  return SimpleType(std::make_shared<const std::vector<SimpleType>>(std::move(args)));
}

SimpleType SimpleType::from_args(std::vector<SimpleType> args) {
  return SimpleType(std::make_shared<const std::vector<SimpleType>>(std::move(args)));
}

SimpleType SimpleType::result() const {
  if (is_base()) throw DomainError("base type has no result");
  return from_args(std::vector<SimpleType>(args_->begin() + 1, args_->end()));
}

int SimpleType::order() const {
  int out = 0;
  for (const SimpleType& a : args()) out = std::max(out, a.order() + 1);
  return out;
}

int SimpleType::internal_arity() const {
  int out = static_cast<int>(args().size());
  for (const SimpleType& a : args()) out = std::max(out, a.internal_arity());
  return out;
}

std::string SimpleType::str() const {
  if (is_base()) return "o";
  std::string out;
  for (const SimpleType& a : args()) {
    if (a.is_base())
      out += "o";
    else
      out += "(" + a.str() + ")";
    out += "->";
  }
  out += "o";
  return out;
}

bool SimpleType::operator==(const SimpleType& other) const {
  if (args_ == other.args_) return true;
  if (args().size() != other.args().size()) return false;
  for (size_t i = 0; i < args().size(); ++i)
    if (!(args()[i] == other.args()[i])) return false;
  return true;
}

std::strong_ordering SimpleType::operator<=>(const SimpleType& other) const {
  if (args_ == other.args_) return std::strong_ordering::equal;
  size_t n = std::min(args().size(), other.args().size());
  for (size_t i = 0; i < n; ++i)
    if (auto c = args()[i] <=> other.args()[i]; c != 0) return c;
  return args().size() <=> other.args().size();
}

namespace {

struct TypeParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("type syntax: " + msg + " at offset " + std::to_string(pos));
  }

  // type := atom ('->' type)?   (right-associative)
  SimpleType type() {
    SimpleType lhs = atom();
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return SimpleType::arrow(lhs, type());
    }
    return lhs;
  }

  SimpleType atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == 'o') {
      ++pos;
      return SimpleType::base();
    }
    if (text[pos] == '(') {
      ++pos;
      SimpleType t = type();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return t;
    }
    fail("expected 'o' or '('");
  }
};

}  // namespace

SimpleType SimpleType::parse(std::string_view text) {
  TypeParser p{text};
  SimpleType t = p.type();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

std::vector<SimpleType> types_up_to(int ord, int iar) {
  if (ord < 0 || iar < 0) return {};
  if (ord == 0) return {SimpleType::base()};
  std::vector<SimpleType> smaller = types_up_to(ord - 1, iar);
  std::vector<SimpleType> out;
  std::vector<SimpleType> pick;
  std::function<void(int)> rec = [&](int remaining) {
    out.push_back(SimpleType::from_args(pick));
    if (remaining == 0) return;
    for (const SimpleType& a : smaller) {
      pick.push_back(a);
      rec(remaining - 1);
      pick.pop_back();
    }
  };
  rec(iar);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace treelab::lambda
