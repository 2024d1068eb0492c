#include "treelab/lambda/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "treelab/errors.hpp"

namespace treelab::lambda {

namespace {

std::string pool_name(int i) { return "x" + std::to_string(i); }

// Numeric order for pool names: x2 before x10.
bool pool_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::string nt_name(const TypeEnv& env, const SimpleType& type) {
  std::vector<std::pair<std::string, SimpleType>> entries(env.begin(), env.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return pool_less(a.first, b.first); });
  std::string out = "N{";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ",";
    out += entries[i].first + ":" + entries[i].second.str();
  }
  out += "|-" + type.str() + "}";
  return out;
}

std::pair<TypeEnv, SimpleType> parse_nt_name(const std::string& name) {
  if (name.size() < 5 || name.substr(0, 2) != "N{" || name.back() != '}')
    throw ParseError("bad nonterminal name " + name);
  std::string inner = name.substr(2, name.size() - 3);
  size_t turnstile = inner.find("|-");
  if (turnstile == std::string::npos) throw ParseError("missing |- in " + name);
  std::string env_part = inner.substr(0, turnstile);
  SimpleType result = SimpleType::parse(inner.substr(turnstile + 2));
  TypeEnv env;
  size_t pos = 0;
  while (pos < env_part.size()) {
    // Entries are comma-separated, but types contain no commas, so a plain
    // scan to the next comma is enough.
    size_t comma = env_part.find(',', pos);
    std::string entry = env_part.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? env_part.size() : comma + 1;
    size_t colon = entry.find(':');
    if (colon == std::string::npos) throw ParseError("bad environment entry in " + name);
    env[entry.substr(0, colon)] = SimpleType::parse(entry.substr(colon + 1));
  }
  return {std::move(env), std::move(result)};
}

std::string binder_terminal(const std::optional<std::string>& binder, const SimpleType& type) {
  return "lam{" + (binder ? *binder : std::string("*")) + ":" + type.str() + "}";
}

namespace {

struct BinderInfo {
  std::optional<std::string> binder;
  SimpleType type;
};

BinderInfo parse_binder_terminal(const std::string& name) {
  if (name.size() < 6 || name.substr(0, 4) != "lam{" || name.back() != '}')
    throw ParseError("bad binder terminal " + name);
  std::string inner = name.substr(4, name.size() - 5);
  size_t colon = inner.find(':');
  if (colon == std::string::npos) throw ParseError("bad binder terminal " + name);
  std::string b = inner.substr(0, colon);
  BinderInfo info{std::nullopt, SimpleType::parse(inner.substr(colon + 1))};
  if (b != "*") info.binder = b;
  return info;
}

}  // namespace

std::vector<std::string> LambdaGrammar::closed_nonterminals() const {
  std::vector<std::string> out;
  for (const auto& [name, info] : nt_info)
    if (info.first.empty()) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

LambdaGrammar build_lambda_grammar(int order_bound, int arity_bound, int var_bound,
                                   long long nt_cap) {
  if (order_bound < 0 || arity_bound < 0 || var_bound < 0)
    throw DomainError("bounds must be nonnegative");
  std::vector<SimpleType> annots = types_up_to(order_bound - 1, arity_bound);
  std::vector<SimpleType> taus = types_up_to(order_bound, arity_bound);

  // Candidate environments: every map from a subset of the pool to annots.
  std::vector<TypeEnv> envs;
  {
    std::vector<TypeEnv> acc{TypeEnv{}};
    for (int i = 1; i <= var_bound; ++i) {
      std::vector<TypeEnv> next;
      for (const TypeEnv& e : acc) {
        next.push_back(e);
        for (const SimpleType& a : annots) {
          TypeEnv e2 = e;
          e2[pool_name(i)] = a;
          next.push_back(std::move(e2));
        }
      }
      acc = std::move(next);
      if (static_cast<long long>(acc.size()) * static_cast<long long>(taus.size()) > nt_cap)
        throw BudgetError("candidate nonterminal count exceeds cap");
    }
    envs = std::move(acc);
  }

  struct Candidate {
    TypeEnv env;
    SimpleType tau;
    std::string name;
  };
  std::vector<Candidate> candidates;
  std::map<std::string, size_t> index;
  for (const TypeEnv& env : envs)
    for (const SimpleType& tau : taus) {
      Candidate c{env, tau, nt_name(env, tau)};
      index[c.name] = candidates.size();
      candidates.push_back(std::move(c));
    }

  struct CandidateRule {
    std::string lhs;
    Tree rhs;
  };
  std::vector<CandidateRule> rules;

  auto within_bounds = [&](const SimpleType& t) {
    return t.order() <= order_bound && t.internal_arity() <= arity_bound;
  };

  for (const Candidate& c : candidates) {
    // Variable rule: {x:tau} |- x : tau.
    if (c.env.size() == 1) {
      const auto& [x, sigma] = *c.env.begin();
      if (sigma == c.tau) rules.push_back({c.name, Tree::leaf(x)});
    }
    if (!c.tau.is_base()) {
      SimpleType sigma = c.tau.arg();
      SimpleType rest = c.tau.result();
      // Unused-binder abstraction.
      rules.push_back({c.name, Tree::node(binder_terminal(std::nullopt, sigma),
                                          {Tree::leaf(nt_name(c.env, rest))})});
      // Least-index named abstraction.
      int i = 1;
      while (i <= var_bound && c.env.count(pool_name(i))) ++i;
      if (i <= var_bound) {
        TypeEnv extended = c.env;
        extended[pool_name(i)] = sigma;
        rules.push_back({c.name, Tree::node(binder_terminal(pool_name(i), sigma),
                                            {Tree::leaf(nt_name(extended, rest))})});
      }
    }
    // Applications: env = env1 U env2 (shared variables at equal types).
    for (const SimpleType& sigma : annots) {
      if (!within_bounds(SimpleType::arrow(sigma, c.tau))) continue;
      std::vector<std::pair<std::string, SimpleType>> entries(c.env.begin(), c.env.end());
      std::function<void(size_t, TypeEnv&, TypeEnv&)> split = [&](size_t i, TypeEnv& e1,
                                                                  TypeEnv& e2) {
        if (i == entries.size()) {
          rules.push_back(
              {c.name,
               Tree::node("app", {Tree::leaf(nt_name(e1, SimpleType::arrow(sigma, c.tau))),
                                  Tree::leaf(nt_name(e2, sigma))})});
          return;
        }
        const auto& [x, ty] = entries[i];
        e1[x] = ty;
        split(i + 1, e1, e2);
        e2[x] = ty;
        split(i + 1, e1, e2);
        e1.erase(x);
        split(i + 1, e1, e2);
        e2.erase(x);
      };
      TypeEnv e1, e2;
      split(0, e1, e2);
    }
  }

  // Keep only inhabited nonterminals (least fixpoint over candidate rules).
  std::set<std::string> inhabited;
  {
    auto rhs_leaves = [&](const Tree& rhs) {
      std::vector<std::string> out;
      std::function<void(const Tree&)> walk = [&](const Tree& t) {
        if (index.count(t.symbol())) out.push_back(t.symbol());
        for (const Tree& k : t.children()) walk(k);
      };
      walk(rhs);
      return out;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (const CandidateRule& r : rules) {
        if (inhabited.count(r.lhs)) continue;
        bool ok = true;
        for (const std::string& m : rhs_leaves(r.rhs)) ok = ok && inhabited.count(m) > 0;
        if (ok) {
          inhabited.insert(r.lhs);
          changed = true;
        }
      }
    }
  }

  // Assemble the grammar with the full terminal alphabet of the definition.
  std::map<std::string, int> sigma;
  for (int i = 1; i <= var_bound; ++i) sigma[pool_name(i)] = 0;
  sigma["app"] = 2;
  for (const SimpleType& a : annots) {
    sigma[binder_terminal(std::nullopt, a)] = 1;
    for (int i = 1; i <= var_bound; ++i) sigma[binder_terminal(pool_name(i), a)] = 1;
  }
  if (sigma.empty()) sigma["app"] = 2;

  LambdaGrammar lg;
  lg.order_bound = order_bound;
  lg.arity_bound = arity_bound;
  lg.var_bound = var_bound;

  std::vector<std::string> nts(inhabited.begin(), inhabited.end());
  std::vector<Rule> final_rules;
  for (const CandidateRule& r : rules) {
    if (!inhabited.count(r.lhs)) continue;
    bool ok = true;
    std::function<void(const Tree&)> walk = [&](const Tree& t) {
      if (index.count(t.symbol()) && !inhabited.count(t.symbol())) ok = false;
      for (const Tree& k : t.children()) walk(k);
    };
    walk(r.rhs);
    if (ok) final_rules.push_back(Rule{r.lhs, r.rhs});
  }
  std::sort(final_rules.begin(), final_rules.end());
  lg.grammar = Grammar(RankedAlphabet{sigma}, std::move(nts), std::move(final_rules));
  for (const std::string& name : inhabited) {
    const Candidate& c = candidates[index[name]];
    lg.nt_info[name] = {c.env, c.tau};
  }
  return lg;
}

LambdaGrammar restrict_reachable(const LambdaGrammar& lg) {
  std::set<std::string> keep;
  std::vector<std::string> work = lg.closed_nonterminals();
  for (const std::string& n : work) keep.insert(n);
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    for (size_t ri : lg.grammar.rules_for(n)) {
      for (const std::string& m : lg.grammar.rhs_nonterminals(lg.grammar.rules()[ri].rhs)) {
        if (keep.insert(m).second) work.push_back(m);
      }
    }
  }
  LambdaGrammar out;
  out.order_bound = lg.order_bound;
  out.arity_bound = lg.arity_bound;
  out.var_bound = lg.var_bound;
  std::vector<std::string> nts(keep.begin(), keep.end());
  std::vector<Rule> rules;
  for (const Rule& r : lg.grammar.rules())
    if (keep.count(r.lhs)) rules.push_back(r);
  out.grammar = Grammar(lg.grammar.alphabet(), std::move(nts), std::move(rules));
  for (const std::string& n : keep) out.nt_info[n] = lg.nt_info.at(n);
  return out;
}

LambdaTerm embed(const Tree& t) {
  const std::string& s = t.symbol();
  if (s == "app") {
    if (t.children().size() != 2) throw DomainError("app must be binary");
    return LambdaTerm::app(embed(t.children()[0]), embed(t.children()[1]));
  }
  if (s.rfind("lam{", 0) == 0) {
    if (t.children().size() != 1) throw DomainError("binder terminal must be unary");
    BinderInfo info = parse_binder_terminal(s);
    return LambdaTerm::abs(info.binder, info.type, embed(t.children()[0]));
  }
  if (!t.children().empty()) throw DomainError("variable terminal must be nullary");
  return LambdaTerm::var(s);
}

namespace {

bool is_pool_name(const std::string& s, int var_bound) {
  if (s.size() < 2 || s[0] != 'x') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  if (s[1] == '0') return false;
  int idx = std::stoi(s.substr(1));
  return idx >= 1 && idx <= var_bound;
}

}  // namespace

Tree rename_canonical(const LambdaTerm& t, int var_bound) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      if (!is_pool_name(t.name(), var_bound))
        throw DomainError("free variable " + t.name() + " is not a pool name within bound");
      return Tree::leaf(t.name());
    case LambdaTerm::Kind::Abs: {
      if (!t.binder() || t.body().free_vars().count(*t.binder()) == 0)
        return Tree::node(binder_terminal(std::nullopt, t.binder_type()),
                          {rename_canonical(t.body(), var_bound)});
      const std::set<std::string>& live = t.free_vars();
      int i = 1;
      while (i <= var_bound && live.count(pool_name(i))) ++i;
      if (i > var_bound)
        throw DomainError("renaming needs more than " + std::to_string(var_bound) +
                          " variable names");
      std::string fresh = pool_name(i);
      LambdaTerm body =
          *t.binder() == fresh ? t.body() : swap_names(t.body(), fresh, *t.binder());
      return Tree::node(binder_terminal(fresh, t.binder_type()),
                        {rename_canonical(body, var_bound)});
    }
    case LambdaTerm::Kind::App:
      return Tree::node("app", {rename_canonical(t.fn(), var_bound),
                                rename_canonical(t.arg(), var_bound)});
  }
  throw Error("unreachable");
}

}  // namespace treelab::lambda
