#pragma once

// Brute-force enumeration of alpha-classes of closed typed terms, used as an
// independent oracle against the grammar pipeline. Terms are generated in de
// Bruijn style (binder names fixed per nesting level), so distinct generated
// terms lie in distinct alpha-classes.

#include <functional>
#include <map>
#include <vector>

#include "treelab/lambda/term.hpp"
#include "treelab/lambda/typecheck.hpp"

namespace oracle {

using treelab::lambda::LambdaTerm;
using treelab::lambda::SimpleType;

class TermEnumerator {
 public:
  explicit TermEnumerator(std::vector<SimpleType> annotations)
      : annotations_(std::move(annotations)) {}

  /// All closed terms of exactly `size` (one representative per
  /// alpha-class), before any typability filtering.
  const std::vector<LambdaTerm>& closed(int size) { return generate(size, 0); }

  /// Representatives of the alpha-classes of closed typable terms of the
  /// given size whose judgment order/arity and variable count respect the
  /// bounds.
  std::vector<LambdaTerm> closed_within(int size, int ord, int iar, int vars) {
    std::vector<LambdaTerm> out;
    for (const LambdaTerm& t : closed(size)) {
      auto j = treelab::lambda::typecheck(t);
      if (!j) continue;
      if (j->order > ord || j->internal_arity > iar) continue;
      if (treelab::lambda::num_vars(t) > vars) continue;
      out.push_back(t);
    }
    return out;
  }

 private:
  static std::string level_name(int level) { return "w" + std::to_string(level); }

  const std::vector<LambdaTerm>& generate(int size, int depth) {
    auto key = std::make_pair(size, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<LambdaTerm> out;
    if (size == 1) {
      for (int d = 1; d <= depth; ++d) out.push_back(LambdaTerm::var(level_name(d)));
    } else if (size >= 2) {
      for (const SimpleType& anno : annotations_)
        for (const LambdaTerm& body : generate(size - 1, depth + 1))
          out.push_back(LambdaTerm::abs(level_name(depth + 1), anno, body));
      for (int ls = 1; ls <= size - 2; ++ls)
        for (const LambdaTerm& f : generate(ls, depth))
          for (const LambdaTerm& a : generate(size - 1 - ls, depth))
            out.push_back(LambdaTerm::app(f, a));
    }
    return memo_[key] = std::move(out);
  }

  std::vector<SimpleType> annotations_;
  std::map<std::pair<int, int>, std::vector<LambdaTerm>> memo_;
};

}  // namespace oracle
