#include "treelab/lambda/beta.hpp"

#include <functional>
#include <set>
#include <unordered_map>

#include "treelab/errors.hpp"

namespace treelab::lambda {

namespace {

std::string fresh_name(const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string cand = "v" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

LambdaTerm substitute(const LambdaTerm& t, const std::string& name, const LambdaTerm& value) {
  if (!t.free_vars().count(name)) return t;
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return value;  // free_vars contains name, so this is it
    case LambdaTerm::Kind::App:
      return LambdaTerm::app(substitute(t.fn(), name, value),
                             substitute(t.arg(), name, value));
    case LambdaTerm::Kind::Abs: {
      // name != binder (else it would not be free in t).
      if (t.binder() && value.free_vars().count(*t.binder())) {
        std::set<std::string> avoid = value.free_vars();
        avoid.insert(t.body().free_vars().begin(), t.body().free_vars().end());
        avoid.insert(name);
        std::string fresh = fresh_name(avoid);
        // Whole-subterm swap is a bijective renaming, so alpha-safe even if
        // `fresh` occurs bound somewhere inside.
        LambdaTerm body = swap_names(t.body(), *t.binder(), fresh);
        return LambdaTerm::abs(fresh, t.binder_type(), substitute(body, name, value));
      }
      return LambdaTerm::abs(t.binder(), t.binder_type(), substitute(t.body(), name, value));
    }
  }
  throw Error("unreachable");
}

namespace {

LambdaTerm contract(const LambdaTerm& redex) {
  const LambdaTerm& f = redex.fn();
  if (!f.binder()) return f.body();  // unused binder erases the argument
  return substitute(f.body(), *f.binder(), redex.arg());
}

bool is_redex(const LambdaTerm& t) {
  return t.kind() == LambdaTerm::Kind::App && t.fn().kind() == LambdaTerm::Kind::Abs;
}

void reducts_walk(const LambdaTerm& t, std::vector<LambdaTerm>& out) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return;
    case LambdaTerm::Kind::Abs: {
      std::vector<LambdaTerm> sub;
      reducts_walk(t.body(), sub);
      for (LambdaTerm& s : sub)
        out.push_back(LambdaTerm::abs(t.binder(), t.binder_type(), std::move(s)));
      return;
    }
    case LambdaTerm::Kind::App: {
      if (is_redex(t)) out.push_back(contract(t));
      std::vector<LambdaTerm> left, right;
      reducts_walk(t.fn(), left);
      reducts_walk(t.arg(), right);
      for (LambdaTerm& s : left) out.push_back(LambdaTerm::app(std::move(s), t.arg()));
      for (LambdaTerm& s : right) out.push_back(LambdaTerm::app(t.fn(), std::move(s)));
      return;
    }
  }
}

}  // namespace

std::vector<LambdaTerm> beta_step_all(const LambdaTerm& t) {
  std::vector<LambdaTerm> all;
  reducts_walk(t, all);
  std::vector<LambdaTerm> unique;
  std::set<std::string> seen;
  for (LambdaTerm& s : all)
    if (seen.insert(alpha_key(s)).second) unique.push_back(std::move(s));
  return unique;
}

bool is_normal_form(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return true;
    case LambdaTerm::Kind::Abs:
      return is_normal_form(t.body());
    case LambdaTerm::Kind::App:
      return !is_redex(t) && is_normal_form(t.fn()) && is_normal_form(t.arg());
  }
  return true;
}

namespace {

// One step of the perpetual strategy; requires a redex somewhere.
LambdaTerm perpetual_step(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      throw Error("perpetual_step on a normal form");
    case LambdaTerm::Kind::Abs:
      return LambdaTerm::abs(t.binder(), t.binder_type(), perpetual_step(t.body()));
    case LambdaTerm::Kind::App: {
      if (is_redex(t)) {
        const LambdaTerm& f = t.fn();
        bool binder_used = f.binder() && f.body().free_vars().count(*f.binder()) > 0;
        if (binder_used || is_normal_form(t.arg())) return contract(t);
        return LambdaTerm::app(t.fn(), perpetual_step(t.arg()));
      }
      if (!is_normal_form(t.fn()))
        return LambdaTerm::app(perpetual_step(t.fn()), t.arg());
      return LambdaTerm::app(t.fn(), perpetual_step(t.arg()));
    }
  }
  throw Error("unreachable");
}

}  // namespace

long long greedy_reduction_length(const LambdaTerm& t, long long step_cap) {
  LambdaTerm cur = t;
  long long steps = 0;
  while (!is_normal_form(cur)) {
    if (steps >= step_cap) return steps;
    cur = perpetual_step(cur);
    ++steps;
  }
  return steps;
}

namespace {

struct ExactSearch {
  long long budget;
  long long expanded = 0;
  std::unordered_map<std::string, long long> memo;

  long long run(const LambdaTerm& t) {
    std::string key = alpha_key(t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (++expanded > budget) throw BudgetError("beta search state budget exceeded");
    std::vector<LambdaTerm> next = beta_step_all(t);
    long long best = 0;
    for (const LambdaTerm& s : next) best = std::max(best, 1 + run(s));
    memo[key] = best;
    return best;
  }
};

}  // namespace

BetaResult beta_max_len(const LambdaTerm& t, long long state_budget) {
  ExactSearch search{state_budget, {}};
  try {
    return {search.run(t), true};
  } catch (const BudgetError&) {
    return {greedy_reduction_length(t), false};
  }
}

}  // namespace treelab::lambda
