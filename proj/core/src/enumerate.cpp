#include "treelab/enumerate.hpp"

#include <algorithm>
#include <functional>

#include "treelab/errors.hpp"

namespace treelab {

namespace {

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    out += a;
    out += '\x1f';
  }
  return out;
}

// Replaces the nonterminal leaves of `rhs` (depth-first order) with `fills`.
Context subst_leaves(const Grammar& g, const Tree& rhs, const std::vector<Context>& fills,
                     size_t& next) {
  if (g.is_nonterminal(rhs.symbol())) return fills[next++];
  if (rhs.children().empty()) return rhs;
  std::vector<Context> kids;
  kids.reserve(rhs.children().size());
  for (const Tree& k : rhs.children()) kids.push_back(subst_leaves(g, k, fills, next));
  return Context::node(rhs.symbol(), std::move(kids));
}

bool is_unit_rule(const Grammar& g, const Rule& r) {
  return g.is_nonterminal(r.rhs.symbol());
}

}  // namespace

Enumerator::Enumerator(const Grammar& g, long long budget) : g_(g), budget_(budget) {}

void Enumerator::charge(long long items) {
  used_ += items;
  if (used_ > budget_)
    throw BudgetError("enumeration budget of " + std::to_string(budget_) +
                      " items exceeded");
}

void Enumerator::ensure_tree_layer(int size) {
  for (int s = tree_layer_done_ + 1; s <= size; ++s) {
    for (const std::string& nt : g_.nonterminals()) tree_sets_[{nt, s}];
    // Non-unit rules mention at least one terminal, so they only consume
    // strictly smaller sizes, which are final by now.
    for (const Rule& r : g_.rules()) {
      if (is_unit_rule(g_, r)) continue;
      std::vector<std::string> leaves = g_.rhs_nonterminals(r.rhs);
      int remaining = s - g_.rhs_terminal_size(r.rhs);
      if (remaining < static_cast<int>(leaves.size()) || (leaves.empty() && remaining != 0))
        continue;
      std::set<Tree>& out = tree_sets_[{r.lhs, s}];
      std::vector<Context> chosen(leaves.size(), Context::hole());
      std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == leaves.size()) {
          if (left != 0) return;
          size_t next = 0;
          charge(1);
          out.insert(subst_leaves(g_, r.rhs, chosen, next));
          return;
        }
        int slack = left - static_cast<int>(leaves.size() - 1 - i);
        for (int si = 1; si <= slack; ++si) {
          for (const Tree& t : tree_sets_[{leaves[i], si}]) {
            chosen[i] = t;
            rec(i + 1, left - si);
          }
        }
      };
      rec(0, remaining);
    }
    // Unit rules operate within the same size; iterate to a fixpoint.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Rule& r : g_.rules()) {
        if (!is_unit_rule(g_, r)) continue;
        const std::set<Tree>& src = tree_sets_[{r.rhs.symbol(), s}];
        std::set<Tree>& dst = tree_sets_[{r.lhs, s}];
        for (const Tree& t : src)
          if (dst.insert(t).second) {
            charge(1);
            changed = true;
          }
      }
    }
    tree_layer_done_ = s;
  }
}

const std::set<Tree>& Enumerator::trees(const std::string& nt, int size) {
  if (!g_.is_nonterminal(nt)) throw DomainError("unknown nonterminal " + nt);
  if (size < 0) throw DomainError("negative size");
  ensure_tree_layer(size);
  return tree_sets_[{nt, size}];
}

void Enumerator::ensure_ctx_layer(const std::vector<std::string>& args, int size) {
  std::string key = join_args(args);
  if (ctx_layers_done_.count({key, size})) return;
  ctx_layers_done_.insert({key, size});

  for (const std::string& nt : g_.nonterminals()) ctx_sets_[{nt, key, size}];

  // The empty context has type N => N and size 0.
  if (size == 0 && args.size() == 1)
    ctx_sets_[{args[0], key, 0}].insert(Context::hole());

  // Non-unit rules: split the argument sequence into consecutive blocks, one
  // per nonterminal leaf of the rhs, and the size budget likewise. Blocks
  // only need strictly smaller layers (the rhs has at least one terminal).
  for (const Rule& r : g_.rules()) {
    if (is_unit_rule(g_, r)) continue;
    std::vector<std::string> leaves = g_.rhs_nonterminals(r.rhs);
    int remaining = size - g_.rhs_terminal_size(r.rhs);
    if (remaining < 0) continue;
    if (leaves.empty()) {
      if (remaining == 0 && args.empty()) {
        charge(1);
        size_t next = 0;
        ctx_sets_[{r.lhs, key, size}].insert(subst_leaves(g_, r.rhs, {}, next));
      }
      continue;
    }
    std::set<Context>& out = ctx_sets_[{r.lhs, key, size}];
    std::vector<Context> chosen(leaves.size(), Context::hole());
    // rec(i, arg_pos, left): leaf i takes a block starting at arg_pos.
    std::function<void(size_t, size_t, int)> rec = [&](size_t i, size_t arg_pos, int left) {
      if (i == leaves.size()) {
        if (arg_pos != args.size() || left != 0) return;
        size_t next = 0;
        charge(1);
        out.insert(subst_leaves(g_, r.rhs, chosen, next));
        return;
      }
      for (size_t block = 0; arg_pos + block <= args.size(); ++block) {
        std::vector<std::string> sub(args.begin() + arg_pos, args.begin() + arg_pos + block);
        std::string sub_key = join_args(sub);
        for (int si = 0; si <= left; ++si) {
          ensure_ctx_layer(sub, si);
          for (const Context& c : ctx_sets_[{leaves[i], sub_key, si}]) {
            chosen[i] = c;
            rec(i + 1, arg_pos + block, left - si);
          }
        }
      }
    };
    rec(0, 0, remaining);
  }

  // Unit rules: fixpoint within the same (args, size) layer.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g_.rules()) {
      if (!is_unit_rule(g_, r)) continue;
      const std::set<Context>& src = ctx_sets_[{r.rhs.symbol(), key, size}];
      std::set<Context>& dst = ctx_sets_[{r.lhs, key, size}];
      for (const Context& c : src)
        if (dst.insert(c).second) {
          charge(1);
          changed = true;
        }
    }
  }
}

const std::set<Context>& Enumerator::contexts(const ContextType& type, int size) {
  if (!g_.is_nonterminal(type.result)) throw DomainError("unknown nonterminal " + type.result);
  for (const auto& a : type.args)
    if (!g_.is_nonterminal(a)) throw DomainError("unknown nonterminal " + a);
  if (size < 0) throw DomainError("negative size");
  ensure_ctx_layer(type.args, size);
  return ctx_sets_[{type.result, join_args(type.args), size}];
}

// ---------------------------------------------------------------------------
// Leftmost derivation counting.
//
// A leftmost derivation of t from N picks a rule N -> rhs whose terminal
// skeleton matches t, then derives each nonterminal leaf's subtree in order.
// Counting therefore reduces to a product-sum over the pair graph
// (nonterminal, subtree). Unit rules keep the subtree fixed, so a unit cycle
// through a productive pair makes the count infinite; we detect that case
// and saturate.
// ---------------------------------------------------------------------------

struct Enumerator::DerivGraph {
  struct Inst {
    std::vector<int> children;  // pair ids
    bool unit = false;
  };
  std::map<std::pair<std::string, const void*>, int> ids;
  std::vector<std::pair<std::string, Tree>> pairs;
  std::vector<std::vector<Inst>> insts;
  std::vector<bool> productive;
};

namespace {

// Matches the terminal skeleton of rhs against t; collects the (nonterminal,
// subtree) pairs in depth-first order. Returns false on mismatch.
bool match_rhs(const Grammar& g, const Tree& rhs, const Tree& t,
               std::vector<std::pair<std::string, Tree>>& out) {
  if (g.is_nonterminal(rhs.symbol())) {
    out.emplace_back(rhs.symbol(), t);
    return true;
  }
  if (t.is_hole() || rhs.symbol() != t.symbol()) return false;
  if (rhs.children().size() != t.children().size()) return false;
  for (size_t i = 0; i < rhs.children().size(); ++i)
    if (!match_rhs(g, rhs.children()[i], t.children()[i], out)) return false;
  return true;
}

// Stable identity for subtree memo keys: the children vector's address is
// owned by the shared node and stable for the value's lifetime. Distinct but
// equal subtrees get separate entries, which is only a cache miss.
const void* tree_id(const Tree& t) { return static_cast<const void*>(&t.children()); }

}  // namespace

Enumerator::DerivGraph Enumerator::build_deriv_graph(const std::string& nt, const Tree& t) {
  DerivGraph gph;
  std::function<int(const std::string&, const Tree&)> visit = [&](const std::string& n,
                                                                  const Tree& sub) -> int {
    auto key = std::make_pair(n, tree_id(sub));
    if (auto it = gph.ids.find(key); it != gph.ids.end()) return it->second;
    int id = static_cast<int>(gph.pairs.size());
    gph.ids[key] = id;
    gph.pairs.emplace_back(n, sub);
    gph.insts.emplace_back();
    charge(1);
    for (size_t ri : g_.rules_for(n)) {
      const Rule& r = g_.rules()[ri];
      std::vector<std::pair<std::string, Tree>> found;
      if (!match_rhs(g_, r.rhs, sub, found)) continue;
      DerivGraph::Inst inst;
      inst.unit = is_unit_rule(g_, r);
      for (auto& [m, ts] : found) inst.children.push_back(visit(m, ts));
      gph.insts[id].push_back(std::move(inst));
    }
    return id;
  };
  visit(nt, t);
  return gph;
}

unsigned long long Enumerator::count_leftmost_derivations(const std::string& nt, const Tree& t,
                                                          unsigned long long cap) {
  if (!g_.is_nonterminal(nt)) throw DomainError("unknown nonterminal " + nt);
  DerivGraph gph = build_deriv_graph(nt, t);
  size_t n = gph.pairs.size();

  // Productivity: least fixpoint of "some rule instance with all children
  // productive".
  gph.productive.assign(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i) {
      if (gph.productive[i]) continue;
      for (const auto& inst : gph.insts[i]) {
        bool all = true;
        for (int c : inst.children) all = all && gph.productive[static_cast<size_t>(c)];
        if (all) {
          gph.productive[i] = true;
          changed = true;
          break;
        }
      }
    }
  }
  if (!gph.productive[0]) return 0;

  // A unit cycle among productive pairs means infinitely many leftmost
  // sequences (loop any number of times, then exit through a derivation).
  {
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::function<bool(size_t)> dfs = [&](size_t i) -> bool {
      state[i] = 1;
      for (const auto& inst : gph.insts[i]) {
        if (!inst.unit) continue;
        size_t c = static_cast<size_t>(inst.children[0]);
        if (!gph.productive[c]) continue;
        if (state[c] == 1) return true;
        if (state[c] == 0 && dfs(c)) return true;
      }
      state[i] = 2;
      return false;
    };
    for (size_t i = 0; i < n; ++i)
      if (gph.productive[i] && state[i] == 0 && dfs(i)) return cap;
  }

  // Now the productive subgraph is well-founded (unit edges acyclic, other
  // edges strictly shrink the subtree): memoized product-sum with saturation.
  auto sat_add = [cap](unsigned long long a, unsigned long long b) {
    return (a > cap - std::min(cap, b)) ? cap : std::min(cap, a + b);
  };
  auto sat_mul = [cap](unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return 0ULL;
    return (a > cap / b) ? cap : a * b;
  };
  std::vector<unsigned long long> memo(n, 0);
  std::vector<bool> have(n, false);
  std::function<unsigned long long(size_t)> count = [&](size_t i) -> unsigned long long {
    if (!gph.productive[i]) return 0;
    if (have[i]) return memo[i];
    have[i] = true;  // safe: no productive cycles remain
    unsigned long long total = 0;
    for (const auto& inst : gph.insts[i]) {
      unsigned long long prod = 1;
      for (int c : inst.children) prod = sat_mul(prod, count(static_cast<size_t>(c)));
      total = sat_add(total, prod);
    }
    memo[i] = total;
    return total;
  };
  return count(0);
}

bool Enumerator::member(const std::string& nt, const Tree& t) {
  return count_leftmost_derivations(nt, t, 1) > 0;
}

std::set<Tree> enumerate_trees(const Grammar& g, const std::string& nt, int size,
                               long long budget) {
  Enumerator e(g, budget);
  return e.trees(nt, size);
}

std::set<Context> enumerate_contexts(const Grammar& g, const ContextType& type, int size,
                                     long long budget) {
  Enumerator e(g, budget);
  return e.contexts(type, size);
}

unsigned long long count_leftmost_derivations(const Grammar& g, const std::string& nt,
                                              const Tree& t, unsigned long long cap) {
  Enumerator e(g);
  return e.count_leftmost_derivations(nt, t, cap);
}

bool check_unambiguous_up_to(const Grammar& g, int max_size, long long budget) {
  Enumerator e(g, budget);
  for (int n = 1; n <= max_size; ++n)
    for (const std::string& nt : g.nonterminals())
      for (const Tree& t : e.trees(nt, n))
        if (e.count_leftmost_derivations(nt, t, 2) > 1) return false;
  return true;
}

}  // namespace treelab
