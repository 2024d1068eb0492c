#pragma once

#include <map>
#include <set>
#include <string>

#include "treelab/grammar.hpp"

namespace treelab {

/// Brute-force language enumeration and derivation counting. Used as the
/// independent oracle for the counting/sampling pipeline and by the
/// decomposition verifier. Results are memoized per instance; an instance is
/// not safe for concurrent use (the grammar itself is). Holds a reference to
/// the grammar, which must outlive it.
class Enumerator {
 public:
  explicit Enumerator(const Grammar& g, long long budget = 4'000'000);

  /// Exactly L_n(G, N), the trees of size n derivable from `nt`.
  const std::set<Tree>& trees(const std::string& nt, int size);

  /// Exactly L_n(G, kappa): k-contexts C with kappa.result ->* C[kappa.args].
  const std::set<Context>& contexts(const ContextType& type, int size);

  /// Number of distinct leftmost rewriting sequences from `nt` to `t`,
  /// saturating at `cap` (also returned when the count is infinite, which
  /// can happen with unit-rule cycles).
  unsigned long long count_leftmost_derivations(const std::string& nt, const Tree& t,
                                                unsigned long long cap);

  /// True iff t is in L(G, nt).
  bool member(const std::string& nt, const Tree& t);

  const Grammar& grammar() const { return g_; }

 private:
  struct DerivGraph;
  void ensure_tree_layer(int size);
  void ensure_ctx_layer(const std::vector<std::string>& args, int size);
  void charge(long long items);
  DerivGraph build_deriv_graph(const std::string& nt, const Tree& t);

  const Grammar& g_;
  long long budget_;
  long long used_ = 0;
  int tree_layer_done_ = -1;
  std::map<std::pair<std::string, int>, std::set<Tree>> tree_sets_;
  // Key: (nonterminal, joined args, size).
  std::map<std::tuple<std::string, std::string, int>, std::set<Context>> ctx_sets_;
  std::set<std::pair<std::string, int>> ctx_layers_done_;
};

/// One-shot conveniences over a fresh Enumerator.
std::set<Tree> enumerate_trees(const Grammar& g, const std::string& nt, int size,
                               long long budget = 4'000'000);
std::set<Context> enumerate_contexts(const Grammar& g, const ContextType& type, int size,
                                     long long budget = 4'000'000);
unsigned long long count_leftmost_derivations(const Grammar& g, const std::string& nt,
                                              const Tree& t, unsigned long long cap);

/// Checks that every tree of every nonterminal has at most one leftmost
/// derivation, for all sizes up to `max_size`. Returns true when the bounded
/// check finds no counterexample.
bool check_unambiguous_up_to(const Grammar& g, int max_size, long long budget = 4'000'000);

}  // namespace treelab
