#pragma once

#include <stdexcept>
#include <string>

namespace treelab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input. Carries a 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line(line),
        col(col) {}
  explicit ParseError(const std::string& what) : Error(what), line(0), col(0) {}
  int line;
  int col;
};

/// Wrong number of holes, children, or parts.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (bad index, bad parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource budget (enumeration, expansion, search states) ran out.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, long long lower_bound = -1)
      : Error(what), lower_bound(lower_bound) {}
  /// Best lower bound found before the budget was exhausted, when meaningful.
  long long lower_bound;
};

/// Requested a sample from an empty size slice.
class EmptySliceError : public Error {
 public:
  using Error::Error;
};

/// A tree or context is not generated by the grammar/nonterminal at hand.
class NotInLanguageError : public Error {
 public:
  using Error::Error;
};

/// Not enough observed data to draw the requested conclusion.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A computed result failed one of its own consistency checks.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace treelab
