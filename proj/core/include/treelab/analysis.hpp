#pragma once

#include <set>
#include <string>

#include "treelab/grammar.hpp"

namespace treelab {

/// Nonterminals with non-empty language (least fixpoint).
std::set<std::string> nonempty_nonterminals(const Grammar& g);

/// True iff `to` is reachable from `from`, i.e. L(G, to => from) is
/// non-empty. Requires a grammar with no empty-language nonterminals (prune
/// first); on such grammars the graph closure over rule occurrences computes
/// exactly the 1-context notion.
bool reachable(const Grammar& g, const std::string& from, const std::string& to);

/// The nonterminals generating an infinite language. Requires a pruned
/// grammar.
std::set<std::string> infinite_nonterminals(const Grammar& g);

/// Pairwise reachability over all nonterminals.
bool is_strongly_connected(const Grammar& g);

/// Pairwise reachability over the infinite-language nonterminals only.
bool is_essentially_strongly_connected(const Grammar& g);

}  // namespace treelab
