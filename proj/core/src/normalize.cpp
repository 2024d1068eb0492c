#include "treelab/normalize.hpp"

#include <algorithm>
#include <functional>

#include "treelab/analysis.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"

namespace treelab {

Grammar prune_empty(const Grammar& g) {
  std::set<std::string> keep = nonempty_nonterminals(g);
  if (keep.empty()) throw DomainError("every nonterminal has empty language");
  std::vector<std::string> nts;
  for (const std::string& n : g.nonterminals())
    if (keep.count(n)) nts.push_back(n);
  std::vector<Rule> rules;
  for (const Rule& r : g.rules()) {
    if (!keep.count(r.lhs)) continue;
    bool ok = true;
    for (const std::string& m : g.rhs_nonterminals(r.rhs)) ok = ok && keep.count(m) > 0;
    if (ok) rules.push_back(r);
  }
  return Grammar(g.alphabet(), std::move(nts), std::move(rules));
}

Grammar to_semi_canonical(const Grammar& g) {
  Grammar cur = g.with_sorted_rules();
  long long fresh = 0;
  for (;;) {
    // Find the first rule N -> a(T1,...,Tn) with some Ti not a nonterminal.
    const Rule* offender = nullptr;
    size_t child_index = 0;
    for (const Rule& r : cur.rules()) {
      if (cur.is_nonterminal(r.rhs.symbol())) continue;  // unit rule
      for (size_t i = 0; i < r.rhs.children().size(); ++i) {
        if (!cur.is_nonterminal(r.rhs.children()[i].symbol())) {
          offender = &r;
          child_index = i;
          break;
        }
      }
      if (offender) break;
    }
    if (!offender) return cur;

    std::string fresh_name;
    do {
      fresh_name = offender->lhs + "$" + std::to_string(fresh++);
    } while (cur.is_nonterminal(fresh_name) || cur.is_terminal(fresh_name));

    std::vector<Context> kids = offender->rhs.children();
    Tree split_out = kids[child_index];
    kids[child_index] = Tree::leaf(fresh_name);
    Rule replaced{offender->lhs, Tree::node(offender->rhs.symbol(), std::move(kids))};
    Rule fresh_rule{fresh_name, split_out};

    std::vector<Rule> rules;
    for (const Rule& r : cur.rules()) {
      if (&r == offender) continue;
      rules.push_back(r);
    }
    rules.push_back(std::move(replaced));
    rules.push_back(std::move(fresh_rule));
    std::sort(rules.begin(), rules.end());
    std::vector<std::string> nts = cur.nonterminals();
    nts.push_back(fresh_name);
    std::sort(nts.begin(), nts.end());
    cur = Grammar(cur.alphabet(), std::move(nts), std::move(rules));
  }
}

CanonicalizationResult to_canonical(const Grammar& g, long long rule_budget) {
  if (!g.is_semi_canonical())
    throw DomainError("to_canonical requires a semi-canonical grammar");
  Grammar cur = g.with_sorted_rules();

  // Unit-closure: unit_reach[N] = { N' | N ->* N' by unit rules }, reflexive.
  std::map<std::string, std::set<std::string>> unit_reach;
  for (const std::string& n : cur.nonterminals()) unit_reach[n] = {n};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : cur.rules()) {
      if (!cur.is_nonterminal(r.rhs.symbol())) continue;
      std::set<std::string>& dst = unit_reach[r.lhs];
      for (const std::string& m : unit_reach[r.rhs.symbol()])
        if (dst.insert(m).second) changed = true;
    }
  }

  // Keep nonterminals owning at least one canonical rule.
  std::set<std::string> kept;
  for (const Rule& r : cur.rules())
    if (!cur.is_nonterminal(r.rhs.symbol())) kept.insert(r.lhs);

  std::vector<Rule> rules;
  for (const Rule& r : cur.rules()) {
    if (cur.is_nonterminal(r.rhs.symbol())) continue;
    if (!kept.count(r.lhs)) continue;
    // For each child, close over unit rules into kept nonterminals.
    std::vector<std::vector<std::string>> options;
    for (const Tree& k : r.rhs.children()) {
      std::vector<std::string> opt;
      for (const std::string& m : unit_reach[k.symbol()])
        if (kept.count(m)) opt.push_back(m);
      options.push_back(std::move(opt));
    }
    std::vector<std::string> pick(options.size());
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == options.size()) {
        std::vector<Context> kids;
        kids.reserve(pick.size());
        for (const std::string& m : pick) kids.push_back(Tree::leaf(m));
        if (static_cast<long long>(rules.size()) >= rule_budget)
          throw BudgetError("unit-closure rule budget exceeded");
        rules.push_back(Rule{r.lhs, Tree::node(r.rhs.symbol(), std::move(kids))});
        return;
      }
      for (const std::string& m : options[i]) {
        pick[i] = m;
        rec(i + 1);
      }
    };
    rec(0);
  }
  std::sort(rules.begin(), rules.end());

  CanonicalizationResult result;
  std::vector<std::string> nts(kept.begin(), kept.end());
  result.grammar = Grammar(cur.alphabet(), std::move(nts), std::move(rules));
  for (const std::string& n : g.nonterminals()) {
    std::set<std::string> q;
    for (const std::string& m : unit_reach[n])
      if (kept.count(m)) q.insert(m);
    result.name_map[n] = std::move(q);
  }
  return result;
}

Grammar eliminate_inessential(const Grammar& g, long long expansion_budget) {
  std::set<std::string> inf = infinite_nonterminals(g);
  if (inf.empty()) throw DomainError("no infinite-language nonterminal; nothing would remain");
  std::set<std::string> finite;
  for (const std::string& n : g.nonterminals())
    if (!inf.count(n)) finite.insert(n);
  if (finite.empty()) return g;

  // A rule from a finite-language nonterminal can only mention finite
  // nonterminals (an infinite occurrence would pump the language), so the
  // maximum tree size per finite nonterminal is a well-founded DP.
  std::map<std::string, long long> max_size;
  for (const std::string& n : finite) max_size[n] = 0;
  for (size_t round = 0; round <= g.nonterminals().size() + 1; ++round) {
    bool changed = false;
    for (const Rule& r : g.rules()) {
      if (!finite.count(r.lhs)) continue;
      long long total = g.rhs_terminal_size(r.rhs);
      for (const std::string& m : g.rhs_nonterminals(r.rhs)) {
        if (!finite.count(m))
          throw DomainError("finite nonterminal " + r.lhs +
                            " mentions infinite nonterminal " + m);
        total += max_size[m];
      }
      if (total > max_size[r.lhs]) {
        max_size[r.lhs] = total;
        changed = true;
      }
      if (total > expansion_budget)
        throw BudgetError("inessential-nonterminal expansion exceeded budget");
    }
    if (!changed) break;
    if (round == g.nonterminals().size() + 1)
      throw DomainError("size DP for finite nonterminals did not converge");
  }

  std::map<std::string, std::set<Tree>> langs;
  Enumerator e(g, expansion_budget);
  for (const std::string& n : finite) {
    std::set<Tree>& out = langs[n];
    for (int s = 1; s <= static_cast<int>(max_size[n]); ++s)
      for (const Tree& t : e.trees(n, s)) out.insert(t);
    if (out.empty())
      throw DomainError("nonterminal " + n + " has empty language; prune first");
  }

  // Cartesian instantiation of every finite occurrence in every rule.
  std::vector<Rule> rules;
  long long produced = 0;
  for (const Rule& r : g.rules()) {
    if (finite.count(r.lhs)) continue;
    std::vector<std::string> occs = g.rhs_nonterminals(r.rhs);
    std::vector<const std::set<Tree>*> choice_sets;
    for (const std::string& m : occs)
      choice_sets.push_back(finite.count(m) ? &langs[m] : nullptr);
    std::vector<Context> fills(occs.size(), Context::hole());
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == occs.size()) {
        // Rebuild rhs replacing finite leaves by the chosen trees.
        size_t next = 0;
        std::function<Tree(const Tree&)> rebuild = [&](const Tree& t) -> Tree {
          if (g.is_nonterminal(t.symbol())) {
            size_t idx = next++;
            return choice_sets[idx] ? fills[idx] : t;
          }
          std::vector<Context> kids;
          kids.reserve(t.children().size());
          for (const Tree& k : t.children()) kids.push_back(rebuild(k));
          return Tree::node(t.symbol(), std::move(kids));
        };
        Tree new_rhs = rebuild(r.rhs);
        if (++produced > expansion_budget)
          throw BudgetError("inessential-nonterminal expansion exceeded budget");
        rules.push_back(Rule{r.lhs, std::move(new_rhs)});
        return;
      }
      if (!choice_sets[i]) {
        rec(i + 1);
        return;
      }
      for (const Tree& t : *choice_sets[i]) {
        fills[i] = t;
        rec(i + 1);
      }
    };
    rec(0);
  }
  std::sort(rules.begin(), rules.end());
  std::vector<std::string> nts(inf.begin(), inf.end());
  return Grammar(g.alphabet(), std::move(nts), std::move(rules));
}

CanonicalizationResult full_pipeline(const Grammar& g) {
  Grammar pruned = prune_empty(g);
  CanonicalizationResult result = to_canonical(to_semi_canonical(pruned));
  // Report the partition for the caller's nonterminals only, not the fresh
  // splitting intermediates.
  std::map<std::string, std::set<std::string>> original_map;
  for (const std::string& nt : pruned.nonterminals()) original_map[nt] = result.name_map.at(nt);
  result.name_map = std::move(original_map);
  return result;
}

}  // namespace treelab
