#include "treelab/analysis.hpp"

#include <map>
#include <vector>

#include "treelab/errors.hpp"

namespace treelab {

std::set<std::string> nonempty_nonterminals(const Grammar& g) {
  std::set<std::string> nonempty;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (nonempty.count(r.lhs)) continue;
      bool ok = true;
      for (const std::string& m : g.rhs_nonterminals(r.rhs)) ok = ok && nonempty.count(m) > 0;
      if (ok) {
        nonempty.insert(r.lhs);
        changed = true;
      }
    }
  }
  return nonempty;
}

namespace {

void require_pruned(const Grammar& g) {
  auto nonempty = nonempty_nonterminals(g);
  for (const std::string& nt : g.nonterminals())
    if (!nonempty.count(nt))
      throw DomainError("nonterminal " + nt +
                        " has empty language; prune empty nonterminals first");
}

// Adjacency over rule occurrences: edge N -> M when M occurs in some rhs of N.
std::map<std::string, std::set<std::string>> occurrence_edges(const Grammar& g) {
  std::map<std::string, std::set<std::string>> adj;
  for (const std::string& nt : g.nonterminals()) adj[nt];
  for (const Rule& r : g.rules())
    for (const std::string& m : g.rhs_nonterminals(r.rhs)) adj[r.lhs].insert(m);
  return adj;
}

std::set<std::string> closure_from(const std::map<std::string, std::set<std::string>>& adj,
                                   const std::string& start) {
  std::set<std::string> seen{start};
  std::vector<std::string> work{start};
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const std::string& m : it->second)
      if (seen.insert(m).second) work.push_back(m);
  }
  return seen;
}

}  // namespace

bool reachable(const Grammar& g, const std::string& from, const std::string& to) {
  if (!g.is_nonterminal(from) || !g.is_nonterminal(to))
    throw DomainError("reachable: unknown nonterminal");
  require_pruned(g);
  return closure_from(occurrence_edges(g), from).count(to) > 0;
}

std::set<std::string> infinite_nonterminals(const Grammar& g) {
  require_pruned(g);
  // Edge N -> M is "positive" when taking it adds size: the rhs is anything
  // but the bare nonterminal M (every tree has size >= 1, so a sibling leaf
  // adds size too). N has infinite language iff it reaches a cycle with a
  // positive edge.
  std::map<std::string, std::set<std::string>> adj, pos_adj;
  for (const std::string& nt : g.nonterminals()) {
    adj[nt];
    pos_adj[nt];
  }
  for (const Rule& r : g.rules()) {
    std::vector<std::string> occs = g.rhs_nonterminals(r.rhs);
    bool unit = g.is_nonterminal(r.rhs.symbol());
    for (size_t i = 0; i < occs.size(); ++i) {
      adj[r.lhs].insert(occs[i]);
      if (!unit) pos_adj[r.lhs].insert(occs[i]);
    }
  }
  // pumpable[N]: N lies on a cycle containing at least one positive edge.
  std::set<std::string> pumpable;
  for (const std::string& n : g.nonterminals()) {
    // BFS over (node, seen-positive) pairs back to n with positive seen.
    std::set<std::pair<std::string, bool>> seen;
    std::vector<std::pair<std::string, bool>> work;
    auto push = [&](const std::string& m, bool p) {
      if (seen.insert({m, p}).second) work.push_back({m, p});
    };
    push(n, false);
    bool found = false;
    while (!work.empty() && !found) {
      auto [cur, p] = work.back();
      work.pop_back();
      for (const std::string& m : adj[cur]) {
        bool p2 = p || pos_adj[cur].count(m) > 0;
        if (m == n && p2) {
          found = true;
          break;
        }
        push(m, p2);
      }
    }
    if (found) pumpable.insert(n);
  }
  std::set<std::string> result;
  auto edges = occurrence_edges(g);
  for (const std::string& n : g.nonterminals()) {
    auto reach = closure_from(edges, n);
    for (const std::string& m : reach)
      if (pumpable.count(m)) {
        result.insert(n);
        break;
      }
  }
  return result;
}

bool is_strongly_connected(const Grammar& g) {
  require_pruned(g);
  auto adj = occurrence_edges(g);
  for (const std::string& n : g.nonterminals()) {
    auto reach = closure_from(adj, n);
    for (const std::string& m : g.nonterminals())
      if (!reach.count(m)) return false;
  }
  return true;
}

bool is_essentially_strongly_connected(const Grammar& g) {
  require_pruned(g);
  auto inf = infinite_nonterminals(g);
  auto adj = occurrence_edges(g);
  for (const std::string& n : inf) {
    auto reach = closure_from(adj, n);
    for (const std::string& m : inf)
      if (!reach.count(m)) return false;
  }
  return true;
}

}  // namespace treelab
