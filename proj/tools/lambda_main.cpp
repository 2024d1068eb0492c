#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "treelab/counting.hpp"
#include "treelab/errors.hpp"
#include "treelab/lambda/beta.hpp"
#include "treelab/lambda/explosive.hpp"
#include "treelab/lambda/grammar.hpp"
#include "treelab/lambda/typecheck.hpp"

using namespace treelab;
using namespace treelab::lambda;

int main(int argc, char** argv) {
  CLI::App app{"simply typed lambda terms and their tree grammar"};
  app.require_subcommand(1);

  int d = 2, i = 2, x = 2, n = 0, m = 1, k = 2;
  long long budget = 1'000'000, count = 1;
  unsigned long long seed = 1;
  std::string out_path, map_path, term_text, emit = "term";

  CLI::App* gram = app.add_subcommand("grammar", "emit the term grammar for given bounds");
  gram->add_option("-d,--order", d)->required();
  gram->add_option("-i,--arity", i)->required();
  gram->add_option("-x,--vars", x)->required();
  gram->add_option("-o,--output", out_path)->required();
  gram->add_option("--map", map_path, "nonterminal-to-judgment map (JSON)");

  CLI::App* beta = app.add_subcommand("beta", "maximum beta-reduction length");
  beta->add_option("--term", term_text)->required();
  beta->add_option("--budget", budget, "search state budget");

  CLI::App* expl = app.add_subcommand("explosive", "emit an explosive term");
  expl->add_option("-m", m)->required();
  expl->add_option("-k", k)->required();
  expl->add_option("--emit", emit)->check(CLI::IsMember({"term", "tree"}));

  CLI::App* smp = app.add_subcommand("sample", "sample uniform closed terms of one size");
  smp->add_option("-d,--order", d)->required();
  smp->add_option("-i,--arity", i)->required();
  smp->add_option("-x,--vars", x)->required();
  smp->add_option("-n,--size", n)->required();
  smp->add_option("--seed", seed);
  smp->add_option("--count", count);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gram->parsed()) {
      LambdaGrammar lg = build_lambda_grammar(d, i, x);
      std::ofstream out(out_path);
      if (!out) throw Error("cannot write " + out_path);
      out << lg.grammar.str();
      if (lg.grammar.nonterminals().empty())
        std::cout << "note: no inhabited nonterminal within these bounds\n";
      if (!map_path.empty()) {
        nlohmann::json jm;
        for (const auto& [name, info] : lg.nt_info) {
          nlohmann::json env;
          for (const auto& [var, ty] : info.first) env[var] = ty.str();
          jm[name] = {{"env", env}, {"type", info.second.str()}};
        }
        std::ofstream mp(map_path);
        if (!mp) throw Error("cannot write " + map_path);
        mp << jm.dump(2) << "\n";
      }
      std::cout << lg.grammar.nonterminals().size() << " nonterminals, "
                << lg.grammar.rules().size() << " rules\n";
    } else if (beta->parsed()) {
      LambdaTerm t = LambdaTerm::parse(term_text);
      if (!typecheck(t)) throw DomainError("term is not typable");
      BetaResult r = beta_max_len(t, budget);
      if (r.exact)
        std::cout << "beta = " << r.length << "\n";
      else
        std::cout << "beta >= " << r.length << " (lower bound, state budget exhausted)\n";
    } else if (expl->parsed()) {
      LambdaTerm t = explosive(m, k);
      if (emit == "term")
        std::cout << t.str() << "\n";
      else
        std::cout << rename_canonical(t, 2).str() << "\n";
    } else if (smp->parsed()) {
      LambdaGrammar lg = build_lambda_grammar(d, i, x);
      std::vector<std::string> closed = lg.closed_nonterminals();
      if (closed.empty()) throw DomainError("no closed-type nonterminal within bounds");
      CountTable table(lg.grammar, n);
      mpz_class total = 0;
      for (const std::string& nt : closed) total += table.tree_count(nt, n);
      if (total == 0) throw EmptySliceError("no closed term of size " + std::to_string(n));
      Rng rng(seed);
      for (long long s = 0; s < count; ++s) {
        mpz_class u = rng.below(total);
        size_t pick = 0;
        while (u >= table.tree_count(closed[pick], n)) {
          u -= table.tree_count(closed[pick], n);
          ++pick;
        }
        Tree t = table.sample_uniform(closed[pick], n, rng);
        std::cout << t.str() << "\t" << embed(t).str() << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
