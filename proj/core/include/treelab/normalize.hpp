#pragma once

#include <map>
#include <set>
#include <string>

#include "treelab/grammar.hpp"

namespace treelab {

/// Result of unit-rule elimination: the canonical grammar plus, for each
/// original nonterminal N, the set Q_N of new nonterminals whose languages
/// partition L(G, N).
struct CanonicalizationResult {
  Grammar grammar;
  std::map<std::string, std::set<std::string>> name_map;
};

/// Removes nonterminals with empty language and every rule mentioning them.
/// Errors out when nothing survives.
Grammar prune_empty(const Grammar& g);

/// Splits non-nonterminal subtrees out of rule right-hand sides until every
/// rule is canonical or a unit rule. Fresh nonterminals are named `<lhs>$k`
/// with a global counter; rules are sorted first, so the output is
/// deterministic. Languages of the original nonterminals are preserved.
Grammar to_semi_canonical(const Grammar& g);

/// Eliminates unit rules from a semi-canonical grammar by the closure
/// construction: keep nonterminals owning a canonical rule, add
/// N0 -> a(N1',...) whenever N0 -> a(N1,...) with Ni ->* Ni' by unit rules.
/// The closure can inflate the rule count quadratically; `rule_budget` caps
/// it.
CanonicalizationResult to_canonical(const Grammar& g, long long rule_budget = 1'000'000);

/// Replaces every occurrence of each finite-language nonterminal by each of
/// its finitely many trees (cartesian expansion) and drops the nonterminal.
/// `expansion_budget` caps the total number of rules produced.
Grammar eliminate_inessential(const Grammar& g, long long expansion_budget = 100000);

/// prune_empty, then to_semi_canonical, then to_canonical.
CanonicalizationResult full_pipeline(const Grammar& g);

}  // namespace treelab
