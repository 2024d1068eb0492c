#include "treelab/counting.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "treelab/analysis.hpp"
#include "treelab/errors.hpp"

namespace treelab {

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw DomainError("Rng::below requires a positive bound");
  size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  size_t chunks = (bits + 63) / 64;
  for (;;) {
    mpz_class v = 0;
    for (size_t i = 0; i < chunks; ++i) {
      mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), 64);
      std::uint64_t raw = next_u64();
      v += mpz_class(static_cast<unsigned long>(raw));
    }
    size_t excess = chunks * 64 - bits;
    if (excess > 0) mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), excess);
    if (v < bound) return v;
  }
}

CountTable::CountTable(const Grammar& g, int max_size) : g_(g), max_size_(0) {
  if (!g.is_canonical())
    throw DomainError("counting requires a canonical grammar (run the pipeline first)");
  nt_names_ = g.nonterminals();
  for (size_t i = 0; i < nt_names_.size(); ++i) nt_ids_[nt_names_[i]] = static_cast<int>(i);
  rules_.resize(nt_names_.size());
  for (const Rule& r : g.rules()) {
    IndexedRule ir;
    ir.symbol = r.rhs.symbol();
    for (const Tree& k : r.rhs.children()) ir.children.push_back(nt_ids_.at(k.symbol()));
    rules_[static_cast<size_t>(nt_ids_.at(r.lhs))].push_back(std::move(ir));
  }
  counts_.assign(nt_names_.size(), {mpz_class(0)});
  ways_.resize(nt_names_.size());
  for (size_t i = 0; i < nt_names_.size(); ++i)
    ways_[i].assign(rules_[i].size(), {mpz_class(0)});
  extend(max_size);
}

int CountTable::id_of(const std::string& nt) const {
  auto it = nt_ids_.find(nt);
  if (it == nt_ids_.end()) throw DomainError("unknown nonterminal " + nt);
  return it->second;
}

void CountTable::extend(int max_size) {
  if (max_size <= max_size_) return;
  build_trees(max_size_ + 1, max_size);
  for (auto& [inner, bound] : ctx_built_)
    if (bound < max_size) {
      build_contexts_for(inner, bound + 1, max_size);
      bound = max_size;
    }
  max_size_ = max_size;
}

void CountTable::build_trees(int from, int to) {
  for (auto& row : counts_) row.resize(static_cast<size_t>(to) + 1);
  for (auto& per_rule : ways_)
    for (auto& row : per_rule) row.resize(static_cast<size_t>(to) + 1);

  mpz_class scratch;
  for (int n = from; n <= to; ++n) {
    for (size_t nt = 0; nt < nt_names_.size(); ++nt) {
      mpz_class total = 0;
      for (size_t ri = 0; ri < rules_[nt].size(); ++ri) {
        const IndexedRule& r = rules_[nt][ri];
        mpz_class& ways = ways_[nt][ri][static_cast<size_t>(n)];
        int budget = n - 1;
        size_t k = r.children.size();
        if (k == 0) {
          if (budget == 0) ways = 1;
        } else if (k == 1) {
          ways = counts_[static_cast<size_t>(r.children[0])][static_cast<size_t>(budget)];
        } else if (k == 2) {
          const auto& c1 = counts_[static_cast<size_t>(r.children[0])];
          const auto& c2 = counts_[static_cast<size_t>(r.children[1])];
          for (int j = 1; j <= budget - 1; ++j) {
            if (c1[static_cast<size_t>(j)] == 0) continue;
            if (c2[static_cast<size_t>(budget - j)] == 0) continue;
            mpz_mul(scratch.get_mpz_t(), c1[static_cast<size_t>(j)].get_mpz_t(),
                    c2[static_cast<size_t>(budget - j)].get_mpz_t());
            ways += scratch;
          }
        } else {
          // General arity: composition DP, only exercised by small fixtures.
          std::vector<mpz_class> dp(static_cast<size_t>(budget) + 1);
          dp[0] = 1;
          for (int child : r.children) {
            std::vector<mpz_class> next(static_cast<size_t>(budget) + 1);
            const auto& cc = counts_[static_cast<size_t>(child)];
            for (int s = 0; s <= budget; ++s) {
              if (dp[static_cast<size_t>(s)] == 0) continue;
              for (int j = 1; s + j <= budget; ++j)
                if (cc[static_cast<size_t>(j)] != 0)
                  next[static_cast<size_t>(s + j)] +=
                      dp[static_cast<size_t>(s)] * cc[static_cast<size_t>(j)];
            }
            dp = std::move(next);
          }
          ways = dp[static_cast<size_t>(budget)];
        }
        total += ways;
      }
      counts_[nt][static_cast<size_t>(n)] = std::move(total);
    }
  }
}

void CountTable::build_contexts_for(int inner, int from, int to) {
  auto& per_outer = ctx_[inner];
  if (per_outer.empty()) {
    per_outer.assign(nt_names_.size(), {});
    for (size_t o = 0; o < nt_names_.size(); ++o)
      per_outer[o] = {mpz_class(static_cast<int>(o) == inner ? 1 : 0)};
  }
  for (auto& row : per_outer) row.resize(static_cast<size_t>(to) + 1);

  for (int n = std::max(from, 1); n <= to; ++n) {
    for (size_t nt = 0; nt < nt_names_.size(); ++nt) {
      mpz_class total = per_outer[nt][static_cast<size_t>(n)];
      for (const IndexedRule& r : rules_[nt]) {
        size_t k = r.children.size();
        if (k == 0) continue;
        int budget = n - 1;
        for (size_t hole_child = 0; hole_child < k; ++hole_child) {
          std::function<mpz_class(size_t, int)> rec = [&](size_t i, int left) -> mpz_class {
            if (i == k) return left == 0 ? mpz_class(1) : mpz_class(0);
            mpz_class sum = 0;
            const auto& row = i == hole_child
                                  ? per_outer[static_cast<size_t>(r.children[i])]
                                  : counts_[static_cast<size_t>(r.children[i])];
            int lo = i == hole_child ? 0 : 1;
            for (int s = lo; s <= left; ++s) {
              if (row[static_cast<size_t>(s)] == 0) continue;
              mpz_class rest = rec(i + 1, left - s);
              if (rest != 0) sum += row[static_cast<size_t>(s)] * rest;
            }
            return sum;
          };
          total += rec(0, budget);
        }
      }
      per_outer[nt][static_cast<size_t>(n)] = std::move(total);
    }
  }
}

const mpz_class& CountTable::tree_count(const std::string& nt, int n) const {
  int id = id_of(nt);
  if (n < 0 || n > max_size_)
    throw DomainError("size " + std::to_string(n) + " outside built range 0.." +
                      std::to_string(max_size_));
  return counts_[static_cast<size_t>(id)][static_cast<size_t>(n)];
}

const mpz_class& CountTable::context_count(const std::string& inner, const std::string& outer,
                                           int n) {
  int in_id = id_of(inner);
  int out_id = id_of(outer);
  if (n < 0 || n > max_size_)
    throw DomainError("size " + std::to_string(n) + " outside built range 0.." +
                      std::to_string(max_size_));
  if (!ctx_built_.count(in_id)) {
    build_contexts_for(in_id, 0, max_size_);
    ctx_built_[in_id] = max_size_;
  }
  return ctx_[in_id][static_cast<size_t>(out_id)][static_cast<size_t>(n)];
}

void CountTable::ensure_all_contexts() {
  for (const std::string& nt : nt_names_) context_count(nt, nt, 0);
}

Tree CountTable::sample_node(int nt, int n, Rng& rng) const {
  const auto& rules = rules_[static_cast<size_t>(nt)];
  mpz_class u = rng.below(counts_[static_cast<size_t>(nt)][static_cast<size_t>(n)]);

  // Pick the rule by its precomputed slice weight, then the child sizes by a
  // left-to-right scan in a fixed order; both are exact cumulative scans.
  size_t ri = 0;
  while (u >= ways_[static_cast<size_t>(nt)][ri][static_cast<size_t>(n)]) {
    u -= ways_[static_cast<size_t>(nt)][ri][static_cast<size_t>(n)];
    ++ri;
  }
  const IndexedRule& r = rules[ri];
  size_t k = r.children.size();
  int budget = n - 1;

  if (k == 0) return Tree::leaf(r.symbol);
  if (k == 1)
    return Tree::node(r.symbol, {sample_node(r.children[0], budget, rng)});
  if (k == 2) {
    const auto& c1 = counts_[static_cast<size_t>(r.children[0])];
    const auto& c2 = counts_[static_cast<size_t>(r.children[1])];
    mpz_class w;
    for (int j = 1; j <= budget - 1; ++j) {
      if (c1[static_cast<size_t>(j)] == 0 || c2[static_cast<size_t>(budget - j)] == 0)
        continue;
      mpz_mul(w.get_mpz_t(), c1[static_cast<size_t>(j)].get_mpz_t(),
              c2[static_cast<size_t>(budget - j)].get_mpz_t());
      if (u < w) {
        Tree left = sample_node(r.children[0], j, rng);
        Tree right = sample_node(r.children[1], budget - j, rng);
        return Tree::node(r.symbol, {std::move(left), std::move(right)});
      }
      u -= w;
    }
    throw Error("internal: sampler weights inconsistent with counts");
  }

  // General arity: scan compositions recursively in lexicographic order.
  std::vector<int> sizes(k, 0);
  std::function<bool(size_t, int)> rec = [&](size_t i, int left) -> bool {
    if (i == k) {
      if (left != 0) return false;
      mpz_class w = 1;
      for (size_t j = 0; j < k; ++j)
        w *= counts_[static_cast<size_t>(r.children[j])][static_cast<size_t>(sizes[j])];
      if (w == 0) return false;
      if (u < w) return true;
      u -= w;
      return false;
    }
    int slack = left - static_cast<int>(k - 1 - i);
    for (int s = 1; s <= slack; ++s) {
      if (counts_[static_cast<size_t>(r.children[i])][static_cast<size_t>(s)] == 0) continue;
      sizes[i] = s;
      if (rec(i + 1, left - s)) return true;
    }
    return false;
  };
  if (!rec(0, budget)) throw Error("internal: sampler weights inconsistent with counts");
  std::vector<Context> kids;
  kids.reserve(k);
  for (size_t j = 0; j < k; ++j) kids.push_back(sample_node(r.children[j], sizes[j], rng));
  return Tree::node(r.symbol, std::move(kids));
}

Tree CountTable::sample_uniform(const std::string& nt, int n, Rng& rng) const {
  int id = id_of(nt);
  if (n < 0 || n > max_size_)
    throw DomainError("size " + std::to_string(n) + " outside built range 0.." +
                      std::to_string(max_size_));
  if (counts_[static_cast<size_t>(id)][static_cast<size_t>(n)] == 0)
    throw EmptySliceError("L_" + std::to_string(n) + "(" + nt + ") is empty");
  return sample_node(id, n, rng);
}

PeriodReport detect_period(const Grammar& g, const std::vector<std::string>& scope,
                           int max_size) {
  auto inf = infinite_nonterminals(g);
  for (const std::string& n : scope)
    if (!inf.count(n))
      throw DomainError("scope nonterminal " + n + " does not have infinite language");
  if (scope.empty()) throw DomainError("empty scope");

  CountTable table(g, max_size);
  // Witness size lists per ordered pair (inner N, outer N').
  std::map<std::pair<std::string, std::string>, std::vector<int>> witnesses;
  for (const std::string& n : scope)
    for (const std::string& n2 : scope) {
      std::vector<int> w;
      for (int s = 0; s <= max_size; ++s)
        if (table.context_count(n, n2, s) != 0) w.push_back(s);
      if (w.size() < 2)
        throw InsufficientDataError("pair (" + n + ", " + n2 +
                                    ") has fewer than 2 context sizes up to " +
                                    std::to_string(max_size));
      witnesses[{n, n2}] = std::move(w);
    }

  unsigned long long c = 0;
  for (const auto& [pair, w] : witnesses)
    for (size_t i = 1; i < w.size(); ++i)
      c = std::gcd(c, static_cast<unsigned long long>(w[i] - w[0]));
  if (c == 0) throw InsufficientDataError("no size differences observed");

  PeriodReport report;
  report.period = c;
  report.scope = scope;
  for (const auto& [pair, w] : witnesses) {
    unsigned long long d = static_cast<unsigned long long>(w[0]) % c;
    for (int s : w)
      if (static_cast<unsigned long long>(s) % c != d)
        throw ValidationError("witness size " + std::to_string(s) + " for pair (" +
                              pair.first + ", " + pair.second + ") violates residue " +
                              std::to_string(d));
    report.residues[pair] = d;
  }
  for (const std::string& n : scope)
    if (report.residues[{n, n}] != 0)
      throw ValidationError("d(" + n + ", " + n + ") is nonzero");
  for (const std::string& a : scope)
    for (const std::string& b : scope)
      for (const std::string& d3 : scope)
        if ((report.residues[{a, b}] + report.residues[{b, d3}]) % c !=
            report.residues[{a, d3}] % c)
          throw ValidationError("residues are not additive modulo the period");

  // Least n0 such that the predicted pattern matches observation on [n0, M].
  int n0 = 0;
  for (int m = max_size; m >= 0; --m) {
    bool ok = true;
    for (const std::string& n : scope) {
      for (const std::string& n2 : scope) {
        bool nonempty = table.context_count(n, n2, m) != 0;
        bool predicted = static_cast<unsigned long long>(m) % c == report.residues[{n, n2}];
        if (nonempty != predicted) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) {
      n0 = m + 1;
      break;
    }
  }
  report.n0_estimate = n0;
  return report;
}

AperiodicityVerdict is_aperiodic(CountTable& table, const std::string& nt, int max_size) {
  if (max_size > table.max_size()) table.extend(max_size);
  AperiodicityVerdict v;
  v.bound = max_size;
  bool any = false;
  for (int n = 1; n <= max_size; ++n) any = any || table.tree_count(nt, n) != 0;
  if (!any) {
    v.kind = AperiodicityVerdict::Inconclusive;
    return v;
  }
  int n0 = -1;
  for (int n = max_size; n >= 1; --n) {
    if (table.tree_count(nt, n) == 0) break;
    n0 = n;
  }
  // Require a tail of at least two sizes before claiming anything.
  if (n0 >= 1 && max_size - n0 >= 1) {
    v.kind = AperiodicityVerdict::AperiodicUpTo;
    v.n0 = n0;
  } else {
    v.kind = AperiodicityVerdict::PeriodicWithGaps;
  }
  return v;
}

}  // namespace treelab
