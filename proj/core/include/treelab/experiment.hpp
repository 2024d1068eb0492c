#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treelab/counting.hpp"
#include "treelab/grammar.hpp"

namespace treelab {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 is the 95%
/// band). Returns [0, 1] for zero samples.
WilsonInterval wilson_interval(long long successes, long long samples, double z = 1.96);

struct TrendRow {
  int n = 0;
  int m = 0;
  int pattern_size = 0;
  long long samples = 0;
  long long contains = 0;
  double frequency = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  std::uint64_t seed = 0;
};

struct TrendReport {
  std::vector<TrendRow> rows;
  std::vector<std::string> warnings;
  /// CSV with the fixed header
  /// n,m,pattern_size,samples,contains,frequency,wilson_lo,wilson_hi,seed
  std::string csv() const;
};

/// Word-case experiment: for each n, draws uniform words of length n over
/// the alphabet and reports how often pattern(ceil(p*log2 n)) occurs as a
/// subword.
TrendReport monkey_words(const std::vector<std::string>& alphabet,
                         const std::function<Word(int)>& pattern_family,
                         const std::vector<int>& sizes, long long samples, std::uint64_t seed,
                         double p, int threads = 1);

/// Monte-Carlo estimate of |{T in L_n(G,N) : pattern <= T}| / |L_n(G,N)|.
struct ContainmentResult {
  long long contains = 0;
  long long samples = 0;
  double frequency = 0.0;
  bool exact = false;
};
ContainmentResult containment_mc(const CountTable& table, const std::string& nt, int n,
                                 const Context& pattern, long long samples, std::uint64_t seed,
                                 int threads = 1);
/// Exact ratio by full enumeration (oracle mode).
ContainmentResult containment_exact(const Grammar& g, const std::string& nt, int n,
                                    const Context& pattern, long long budget = 4'000'000);

struct ExperimentConfig {
  std::uint64_t seed = 1;
  long long samples = 2000;
  std::vector<int> sizes;  // ascending
  double p = 0.15;
  int k = 2;
  int order_bound = 2;
  int arity_bound = 2;
  int var_bound = 2;
  std::string csv_path;  // empty: do not write a file
  int threads = 1;
};

/// The containment trend experiment: for each size n, samples terms
/// uniformly from the disjoint union of the closed-type slices of the
/// restricted grammar and measures how often the explosive pattern of scale
/// ceil(p*log2 n) occurs as a subcontext.
TrendReport run_main_experiment(const ExperimentConfig& cfg);

}  // namespace treelab
