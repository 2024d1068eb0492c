#include "treelab/decompose.hpp"

#include <functional>
#include <map>

#include "treelab/errors.hpp"

namespace treelab {

bool good_for(const Context& u, int m) {
  if (u.hole_count() >= 2)
    throw ArityError("good_for expects an affine context");
  if (u.is_hole() || u.size() < m) return false;
  for (const Context& k : u.children())
    if (k.size() >= m) return false;
  return true;
}

namespace {

// Grafts a second-order context into the unique first-order hole of `shell`.
SecondOrderContext graft_into_shell(const Context& shell, const SecondOrderContext& e) {
  if (shell.is_hole()) return e;
  std::vector<SecondOrderContext> kids;
  kids.reserve(shell.children().size());
  for (const Context& k : shell.children()) {
    if (k.hole_count() >= 1)
      kids.push_back(graft_into_shell(k, e));
    else
      kids.push_back(SecondOrderContext::from_tree(k));
  }
  return SecondOrderContext::term(shell.symbol(), std::move(kids));
}

}  // namespace

AuxDecomposition decompose_aux(const Tree& t, int m) {
  if (m < 1) throw DomainError("decomposition cutoff m must be at least 1");
  if (!t.is_tree()) throw DomainError("decompose expects a tree");

  if (t.size() < m)
    return {Context::hole(), SecondOrderContext::from_tree(t), {}};

  std::vector<AuxDecomposition> sub;
  sub.reserve(t.children().size());
  for (const Tree& k : t.children()) sub.push_back(decompose_aux(k, m));

  std::vector<size_t> large;
  for (size_t i = 0; i < t.children().size(); ++i)
    if (t.children()[i].size() >= m) large.push_back(i);

  if (large.size() >= 2) {
    std::vector<SecondOrderContext> kids;
    std::vector<Context> parts;
    for (size_t i = 0; i < sub.size(); ++i) {
      kids.push_back(graft_into_shell(sub[i].shell, sub[i].remainder));
      parts.insert(parts.end(), sub[i].parts.begin(), sub[i].parts.end());
    }
    return {Context::hole(), SecondOrderContext::term(t.symbol(), std::move(kids)),
            std::move(parts)};
  }

  if (large.size() == 1) {
    size_t i = large[0];
    std::vector<Context> shell_kids;
    for (size_t j = 0; j < t.children().size(); ++j)
      shell_kids.push_back(j == i ? sub[i].shell : t.children()[j]);
    Context surrounding = Context::node(t.symbol(), std::move(shell_kids));
    if (surrounding.size() >= m) {
      std::vector<Context> parts;
      parts.push_back(surrounding);
      parts.insert(parts.end(), sub[i].parts.begin(), sub[i].parts.end());
      SecondOrderContext e = SecondOrderContext::hole(
          HoleSpec{1, surrounding.size(), std::nullopt}, {sub[i].remainder});
      return {Context::hole(), std::move(e), std::move(parts)};
    }
    return {std::move(surrounding), sub[i].remainder, sub[i].parts};
  }

  // Every child is small but t itself is large: extract t whole.
  return {Context::hole(),
          SecondOrderContext::hole(HoleSpec{0, t.size(), std::nullopt}, {}),
          {t}};
}

Decomposition decompose(const Tree& t, int m) {
  AuxDecomposition aux = decompose_aux(t, m);
  return {graft_into_shell(aux.shell, aux.remainder), std::move(aux.parts)};
}

namespace {

// Membership in L(G, N) for canonical grammars, memoized on the shared node
// identity of subtrees.
class CanonicalMembership {
 public:
  explicit CanonicalMembership(const Grammar& g) : g_(g) {
    if (!g.is_canonical()) throw DomainError("expected a canonical grammar");
  }

  bool member(const std::string& nt, const Tree& t) {
    auto key = std::make_pair(nt, static_cast<const void*>(&t.children()));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (size_t ri : g_.rules_for(nt)) {
      const Rule& r = g_.rules()[ri];
      if (r.rhs.symbol() != t.symbol()) continue;
      if (r.rhs.children().size() != t.children().size()) continue;
      bool all = true;
      for (size_t i = 0; i < t.children().size() && all; ++i)
        all = member(r.rhs.children()[i].symbol(), t.children()[i]);
      if (all) {
        ok = true;
        break;
      }
    }
    memo_[key] = ok;
    return ok;
  }

  /// The unique rule of `nt` matching tree `t` at the root with all children
  /// in the children nonterminals' languages. Throws when none or many.
  const Rule& unique_rule(const std::string& nt, const Tree& t) {
    const Rule* found = nullptr;
    for (size_t ri : g_.rules_for(nt)) {
      const Rule& r = g_.rules()[ri];
      if (r.rhs.symbol() != t.symbol()) continue;
      if (r.rhs.children().size() != t.children().size()) continue;
      bool all = true;
      for (size_t i = 0; i < t.children().size() && all; ++i)
        all = member(r.rhs.children()[i].symbol(), t.children()[i]);
      if (!all) continue;
      if (found)
        throw ValidationError("two rules of " + nt + " derive " + t.str() +
                              "; grammar is ambiguous");
      found = &r;
    }
    if (!found)
      throw NotInLanguageError(t.str() + " is not in L(" + nt + ")");
    return *found;
  }

 private:
  const Grammar& g_;
  std::map<std::pair<std::string, const void*>, bool> memo_;
};

std::vector<std::string> infer_with(CanonicalMembership& mem, const Context& c,
                                    const std::vector<Tree>& subtrees,
                                    const std::string& n0) {
  if (static_cast<int>(subtrees.size()) != c.hole_count())
    throw ArityError("infer_child_types: part count does not match hole count");
  Tree filled = c.fill(std::span<const Context>(subtrees.data(), subtrees.size()));
  if (!mem.member(n0, filled))
    throw NotInLanguageError(filled.str() + " is not in L(" + n0 + ")");
  std::vector<std::string> out;
  // Walk c and the filled tree in lockstep, reading the unique derivation.
  std::function<void(const Context&, const Tree&, const std::string&)> walk =
      [&](const Context& cn, const Tree& tn, const std::string& nt) {
        if (cn.is_hole()) {
          out.push_back(nt);
          return;
        }
        const Rule& r = mem.unique_rule(nt, tn);
        for (size_t i = 0; i < cn.children().size(); ++i)
          walk(cn.children()[i], tn.children()[i], r.rhs.children()[i].symbol());
      };
  walk(c, filled, n0);
  return out;
}

}  // namespace

std::vector<std::string> infer_child_types(const Grammar& g, const Context& c,
                                           const std::vector<Tree>& subtrees,
                                           const std::string& n0) {
  CanonicalMembership mem(g);
  return infer_with(mem, c, subtrees, n0);
}

Decomposition refine(const Grammar& g, const std::string& nt, const Tree& t, int m) {
  Decomposition d = decompose(t, m);
  CanonicalMembership mem(g);
  if (!mem.member(nt, t)) throw NotInLanguageError(t.str() + " is not in L(" + nt + ")");

  // Precompute, for every node of the frame, the tree obtained by filling
  // its subtree's holes with the corresponding parts.
  std::map<const void*, Tree> filled;
  size_t next = 0;
  std::function<Tree(const SecondOrderContext&)> fill_walk =
      [&](const SecondOrderContext& e) -> Tree {
    if (e.is_hole()) {
      const Context& part = d.parts[next++];
      std::vector<Context> kids;
      kids.reserve(e.children().size());
      for (const auto& k : e.children()) kids.push_back(fill_walk(k));
      Tree out = part.fill(kids);
      filled.emplace(static_cast<const void*>(&e.children()), out);
      return out;
    }
    std::vector<Context> kids;
    kids.reserve(e.children().size());
    for (const auto& k : e.children()) kids.push_back(fill_walk(k));
    Tree out = Tree::node(e.symbol(), std::move(kids));
    filled.emplace(static_cast<const void*>(&e.children()), out);
    return out;
  };
  fill_walk(d.frame);

  size_t part_index = 0;
  std::function<SecondOrderContext(const SecondOrderContext&, const std::string&)> annotate =
      [&](const SecondOrderContext& e, const std::string& cur) -> SecondOrderContext {
    if (e.is_hole()) {
      const Context& part = d.parts[part_index++];
      std::vector<Tree> child_fills;
      for (const auto& k : e.children())
        child_fills.push_back(filled.at(static_cast<const void*>(&k.children())));
      std::vector<std::string> child_nts = infer_with(mem, part, child_fills, cur);
      HoleSpec spec = e.spec();
      spec.type = ContextType{child_nts, cur};
      std::vector<SecondOrderContext> kids;
      for (size_t i = 0; i < e.children().size(); ++i)
        kids.push_back(annotate(e.children()[i], child_nts[i]));
      return SecondOrderContext::hole(std::move(spec), std::move(kids));
    }
    const Tree& self = filled.at(static_cast<const void*>(&e.children()));
    const Rule& r = mem.unique_rule(cur, self);
    std::vector<SecondOrderContext> kids;
    for (size_t i = 0; i < e.children().size(); ++i)
      kids.push_back(annotate(e.children()[i], r.rhs.children()[i].symbol()));
    return SecondOrderContext::term(e.symbol(), std::move(kids));
  };
  d.frame = annotate(d.frame, nt);
  return d;
}

bool typecheck_frame(const Grammar& g, const SecondOrderContext& e, const std::string& nt) {
  if (e.is_hole()) {
    if (!e.spec().type) return false;
    const ContextType& ty = *e.spec().type;
    if (ty.result != nt) return false;
    if (static_cast<int>(ty.args.size()) != static_cast<int>(e.children().size())) return false;
    for (size_t i = 0; i < e.children().size(); ++i)
      if (!typecheck_frame(g, e.children()[i], ty.args[i])) return false;
    return true;
  }
  for (size_t ri : g.rules_for(nt)) {
    const Rule& r = g.rules()[ri];
    if (g.is_nonterminal(r.rhs.symbol())) continue;
    if (r.rhs.symbol() != e.symbol()) continue;
    if (r.rhs.children().size() != e.children().size()) continue;
    bool all = true;
    for (size_t i = 0; i < e.children().size() && all; ++i)
      all = typecheck_frame(g, e.children()[i], r.rhs.children()[i].symbol());
    if (all) return true;
  }
  return false;
}

namespace {

bool ctx_member_walk(const Grammar& g, CanonicalMembership& mem, const Context& c,
                     std::span<const std::string> args, const std::string& nt) {
  if (c.is_hole()) return args.size() == 1 && args[0] == nt;
  if (c.hole_count() == 0) return args.empty() && mem.member(nt, c);
  for (size_t ri : g.rules_for(nt)) {
    const Rule& r = g.rules()[ri];
    if (r.rhs.symbol() != c.symbol()) continue;
    if (r.rhs.children().size() != c.children().size()) continue;
    bool ok = true;
    size_t offset = 0;
    for (size_t i = 0; i < c.children().size() && ok; ++i) {
      size_t holes = static_cast<size_t>(c.children()[i].hole_count());
      ok = ctx_member_walk(g, mem, c.children()[i], args.subspan(offset, holes),
                           r.rhs.children()[i].symbol());
      offset += holes;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool context_member(const Grammar& g, const Context& c, const ContextType& type) {
  if (static_cast<int>(type.args.size()) != c.hole_count()) return false;
  CanonicalMembership mem(g);
  return ctx_member_walk(g, mem, c, std::span<const std::string>(type.args), type.result);
}

SecondOrderContext recompose_typed(const Grammar& g, const SecondOrderContext& e,
                                   std::span<const Context> parts) {
  std::vector<HoleSpec> specs = e.holes();
  if (specs.size() != parts.size())
    throw ArityError("recompose: got " + std::to_string(parts.size()) + " parts for " +
                     std::to_string(specs.size()) + " holes");
  for (size_t i = 0; i < specs.size(); ++i) {
    if (!specs[i].type) continue;
    if (!context_member(g, parts[i], *specs[i].type))
      throw DomainError("recompose: hole " + std::to_string(i + 1) + ": part " +
                        parts[i].str() + " does not inhabit " + specs[i].type->str());
  }
  return recompose(e, parts);
}

BijectionReport verify_bijection(const Grammar& g, const std::string& nt, int n, int m,
                                 long long budget) {
  BijectionReport report;
  Enumerator e(g, budget);
  const std::set<Tree>& lang = e.trees(nt, n);
  report.trees = lang.size();

  struct Group {
    SecondOrderContext frame = SecondOrderContext::term("", {});
    std::set<std::vector<Context>> parts;
  };
  std::map<std::string, Group> groups;

  for (const Tree& t : lang) {
    Decomposition d = refine(g, nt, t, m);
    // Round trip through the typed frame.
    SecondOrderContext back = recompose(d.frame, d.parts);
    if (back.to_tree() != t) {
      report.pass = false;
      report.detail = "recompose(refine(" + t.str() + ")) differs";
      return report;
    }
    Group& grp = groups[d.frame.str()];
    grp.frame = d.frame;
    if (!grp.parts.insert(d.parts).second) {
      report.pass = false;
      report.detail = "two trees share frame and parts: " + t.str();
      return report;
    }
  }
  report.frames = groups.size();

  unsigned long long total = 0;
  for (auto& [key, grp] : groups) {
    std::vector<HoleSpec> specs = grp.frame.holes();
    std::vector<std::vector<Context>> components;
    unsigned long long product = 1;
    for (const HoleSpec& spec : specs) {
      std::vector<Context> good;
      for (const Context& u : e.contexts(*spec.type, spec.declared_size))
        if (good_for(u, m)) good.push_back(u);
      product *= static_cast<unsigned long long>(good.size());
      components.push_back(std::move(good));
    }
    if (grp.parts.size() != product) {
      report.pass = false;
      report.detail = "frame " + key + ": " + std::to_string(grp.parts.size()) +
                      " part tuples vs product " + std::to_string(product);
      return report;
    }
    for (const auto& tuple : grp.parts) {
      for (size_t i = 0; i < tuple.size(); ++i) {
        const auto& comp = components[i];
        if (std::find(comp.begin(), comp.end(), tuple[i]) == comp.end()) {
          report.pass = false;
          report.detail = "frame " + key + ": part " + tuple[i].str() +
                          " not in the good component for hole " + std::to_string(i + 1);
          return report;
        }
      }
    }
    total += product;
  }
  if (total != report.trees) {
    report.pass = false;
    report.detail = "sum of frame products " + std::to_string(total) + " differs from |L_n| " +
                    std::to_string(report.trees);
  }
  return report;
}

}  // namespace treelab
