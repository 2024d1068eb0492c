#pragma once

#include <vector>

#include "treelab/lambda/term.hpp"

namespace treelab::lambda {

/// Capture-avoiding substitution of `value` for free occurrences of `name`.
LambdaTerm substitute(const LambdaTerm& t, const std::string& name, const LambdaTerm& value);

/// All one-step beta reducts (one per redex position), deduplicated up to
/// alpha-equivalence.
std::vector<LambdaTerm> beta_step_all(const LambdaTerm& t);

bool is_normal_form(const LambdaTerm& t);

struct BetaResult {
  long long length = 0;
  /// True when `length` is the exact maximum reduction length; false when the
  /// state budget ran out and `length` is only the greedy lower bound.
  bool exact = true;
};

/// beta(t): the maximum length over all beta-reduction sequences, by a
/// memoized search over alpha-classes. If more than `state_budget` distinct
/// classes are visited the search falls back to the length of the
/// longest-first greedy strategy, flagged as a lower bound.
BetaResult beta_max_len(const LambdaTerm& t, long long state_budget = 1'000'000);

/// Length of the reduction computed by the perpetual strategy: contract the
/// leftmost redex unless it would erase an unreduced argument, in which case
/// reduce inside the argument first. Always a sound lower bound for beta(t).
long long greedy_reduction_length(const LambdaTerm& t, long long step_cap = 100'000'000);

}  // namespace treelab::lambda
