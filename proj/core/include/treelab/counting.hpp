#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "treelab/grammar.hpp"
#include "treelab/rng.hpp"

namespace treelab {

/// Size-indexed exact counts of trees and 1-contexts for a canonical
/// grammar. Extending the bound preserves the existing prefix. Nonterminals
/// and rules are indexed once at construction so counting and sampling stay
/// off the string maps. Holds a reference to the grammar, which must outlive
/// the table.
class CountTable {
 public:
  /// Builds tree counts up to `max_size`. Context counts are built lazily on
  /// first use (per inner nonterminal) or eagerly via ensure_all_contexts.
  CountTable(const Grammar& g, int max_size);

  const Grammar& grammar() const { return g_; }
  int max_size() const { return max_size_; }

  /// |L_n(G, N)| exactly.
  const mpz_class& tree_count(const std::string& nt, int n) const;
  /// |L_n(G, inner => outer)|: 1-contexts S with outer ->* S[inner].
  const mpz_class& context_count(const std::string& inner, const std::string& outer, int n);

  /// Extends every table to the new bound; prefixes are unchanged.
  void extend(int max_size);
  /// Builds context counts for every (inner, outer) pair up to max_size().
  void ensure_all_contexts();

  /// Draws a tree exactly uniformly from L_n(G, N). Throws EmptySliceError
  /// when the slice is empty. Pure reads after construction, so concurrent
  /// sampling with per-thread generators is safe.
  Tree sample_uniform(const std::string& nt, int n, Rng& rng) const;

 private:
  struct IndexedRule {
    std::string symbol;
    std::vector<int> children;  // nonterminal ids
  };

  int id_of(const std::string& nt) const;
  void build_trees(int from, int to);
  void build_contexts_for(int inner, int from, int to);
  Tree sample_node(int nt, int n, Rng& rng) const;

  const Grammar& g_;
  int max_size_;
  std::vector<std::string> nt_names_;
  std::map<std::string, int> nt_ids_;
  std::vector<std::vector<IndexedRule>> rules_;          // [nt]
  std::vector<std::vector<mpz_class>> counts_;           // [nt][n]
  std::vector<std::vector<std::vector<mpz_class>>> ways_;  // [nt][rule][n]
  // ctx_[inner][outer][n], built lazily per inner nonterminal.
  std::map<int, std::vector<std::vector<mpz_class>>> ctx_;
  std::map<int, int> ctx_built_;  // inner id -> built bound
};

/// Periodicity constants measured from a count table: the common period c,
/// per-pair residues d(N,N'), and the least bound from which the observed
/// nonemptiness pattern is exact up to the table bound.
struct PeriodReport {
  unsigned long long period = 0;
  std::map<std::pair<std::string, std::string>, unsigned long long> residues;
  int n0_estimate = 0;
  std::vector<std::string> scope;
};

/// Computes the period report over `scope` (a subset of the infinite
/// nonterminals) using context counts up to `max_size`. Validates the
/// residue laws (d(N,N) = 0, additivity mod c, and that every witness size
/// matches its residue) and throws ValidationError otherwise.
PeriodReport detect_period(const Grammar& g, const std::vector<std::string>& scope,
                           int max_size);

struct AperiodicityVerdict {
  enum Kind { AperiodicUpTo, PeriodicWithGaps, Inconclusive } kind;
  int n0 = -1;  // least n with L_m nonempty for all n <= m <= bound
  int bound = 0;
};

/// Inspects the nonemptiness tail of tree counts for `nt` up to `max_size`.
AperiodicityVerdict is_aperiodic(CountTable& table, const std::string& nt, int max_size);

}  // namespace treelab
