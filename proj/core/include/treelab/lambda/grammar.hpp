#pragma once

#include <map>
#include <optional>
#include <string>

#include "treelab/grammar.hpp"
#include "treelab/lambda/term.hpp"

namespace treelab::lambda {

using TypeEnv = std::map<std::string, SimpleType>;

/// The regular tree grammar of alpha-classes of typed terms within bounds:
/// nonterminals are the inhabited (env |- type) pairs, terminals are the
/// variables x1..x_vars (nullary), `app` (binary), and annotated binders
/// `lam{x:T}` / `lam{*:T}` (unary).
struct LambdaGrammar {
  Grammar grammar;
  std::map<std::string, std::pair<TypeEnv, SimpleType>> nt_info;
  int order_bound = 0;
  int arity_bound = 0;
  int var_bound = 0;

  /// Nonterminals with empty environment, sorted by name.
  std::vector<std::string> closed_nonterminals() const;
};

/// Serialized nonterminal name, `N{x1:o,x2:o->o|-o}`.
std::string nt_name(const TypeEnv& env, const SimpleType& type);
std::pair<TypeEnv, SimpleType> parse_nt_name(const std::string& name);

/// Terminal name of an annotated binder, `lam{x1:o}` or `lam{*:o->o}`.
std::string binder_terminal(const std::optional<std::string>& binder, const SimpleType& type);

/// Builds the full grammar for the given bounds. Throws BudgetError when the
/// candidate nonterminal count exceeds `nt_cap` (it grows steeply in the
/// arity and variable bounds).
LambdaGrammar build_lambda_grammar(int order_bound, int arity_bound, int var_bound,
                                   long long nt_cap = 2'000'000);

/// Keeps only nonterminals reachable from some closed-environment
/// nonterminal (the restricted grammar used by the experiments).
LambdaGrammar restrict_reachable(const LambdaGrammar& lg);

/// Reads a grammar tree back as a term (the embedding e).
LambdaTerm embed(const Tree& t);

/// The canonical renaming rn: produces the grammar tree representing the
/// alpha-class of `t`, using binder pool x1..x_vars. Free variables of `t`
/// must already be pool names. Throws DomainError when more than `var_bound`
/// simultaneously-live variables are needed.
Tree rename_canonical(const LambdaTerm& t, int var_bound);

}  // namespace treelab::lambda
