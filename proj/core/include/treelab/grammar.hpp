#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "treelab/alphabet.hpp"
#include "treelab/context.hpp"

namespace treelab {

/// The type of a k-context relative to a grammar: N1...Nk => N classifies
/// contexts C with N ->* C[N1,...,Nk].
struct ContextType {
  std::vector<std::string> args;
  std::string result;

  bool operator==(const ContextType&) const = default;
  auto operator<=>(const ContextType&) const = default;
  std::string str() const;
};

/// A rewriting rule N -> rhs, where rhs is a tree over the terminal alphabet
/// extended with nonterminals used as nullary leaves.
struct Rule {
  std::string lhs;
  Tree rhs;

  bool operator==(const Rule&) const = default;
  auto operator<=>(const Rule&) const = default;
};

/// A regular tree grammar. Immutable after construction; queries are pure.
class Grammar {
 public:
  Grammar() = default;
  Grammar(RankedAlphabet alphabet, std::vector<std::string> nonterminals,
          std::vector<Rule> rules);

  const RankedAlphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& nonterminals() const { return nonterminals_; }
  const std::vector<Rule>& rules() const { return rules_; }

  bool is_terminal(const std::string& name) const { return alphabet_.contains(name); }
  bool is_nonterminal(const std::string& name) const { return nonterminal_set_.count(name) > 0; }

  /// Indices into `rules()` of the rules with the given left-hand side.
  const std::vector<size_t>& rules_for(const std::string& nt) const;

  /// True iff every rule has shape N -> a(N1,...,Nk) with a terminal root.
  bool is_canonical() const;
  /// True iff every rule is canonical or a unit rule N -> N'.
  bool is_semi_canonical() const;

  /// A copy with rules sorted lexicographically (lhs, then rhs literal);
  /// transformations sort first so their output is deterministic.
  Grammar with_sorted_rules() const;

  /// Nonterminal leaves of `rhs` in depth-first left-to-right order.
  std::vector<std::string> rhs_nonterminals(const Tree& rhs) const;
  /// Number of terminal occurrences in `rhs`.
  int rhs_terminal_size(const Tree& rhs) const;

  std::string str() const;

 private:
  void validate() const;

  RankedAlphabet alphabet_;
  std::vector<std::string> nonterminals_;
  std::set<std::string> nonterminal_set_;
  std::vector<Rule> rules_;
  std::map<std::string, std::vector<size_t>> rules_by_lhs_;
};

/// Parses the line-oriented grammar file format:
///   terminal <name> <rank>
///   rule <NT> -> <tree-literal over terminals and nonterminals>
/// `#` starts a comment. Any rhs identifier not declared as a terminal is a
/// nonterminal and must occur as some rule's left-hand side.
Grammar parse_grammar(std::string_view text);

/// Reads a grammar from a file path.
Grammar load_grammar(const std::string& path);

}  // namespace treelab
