#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "treelab/analysis.hpp"
#include "treelab/counting.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/normalize.hpp"

using namespace treelab;

int main(int argc, char** argv) {
  CLI::App app{"regular tree grammar toolkit"};
  app.require_subcommand(1);

  std::string in_path, out_path, report_path, nt;
  int size = 0, max_size = 40, check_bound = 10;
  long long count = 1;
  unsigned long long seed = 1;
  bool as_json = false;

  CLI::App* canon = app.add_subcommand("canonicalize", "prune, split, and remove unit rules");
  canon->add_option("input", in_path, "grammar file")->required();
  canon->add_option("-o,--output", out_path, "write the canonical grammar here")->required();
  canon->add_option("--report", report_path, "write the nonterminal map as JSON");
  canon->add_option("--check-bound", check_bound, "bounded hypothesis-check size");

  CLI::App* cnt = app.add_subcommand("count", "count trees of one size slice");
  cnt->add_option("input", in_path)->required();
  cnt->add_option("-N,--nonterminal", nt)->required();
  cnt->add_option("-n,--size", size)->required();

  CLI::App* smp = app.add_subcommand("sample", "draw uniform trees from one size slice");
  smp->add_option("input", in_path)->required();
  smp->add_option("-N,--nonterminal", nt)->required();
  smp->add_option("-n,--size", size)->required();
  smp->add_option("--count", count, "number of draws");
  smp->add_option("--seed", seed);

  CLI::App* per = app.add_subcommand("period", "measure the period and residues");
  per->add_option("input", in_path)->required();
  per->add_option("--max-size", max_size);
  per->add_flag("--json", as_json, "emit JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (canon->parsed()) {
      Grammar g = load_grammar(in_path);
      // The pipeline's hypotheses are semi-decidable; report, do not refuse.
      bool unamb = check_unambiguous_up_to(g, check_bound);
      std::cout << (unamb ? "unambiguous up to " + std::to_string(check_bound)
                          : "ambiguity found within size " + std::to_string(check_bound))
                << "\n";
      Grammar pruned = prune_empty(g);
      std::cout << (is_strongly_connected(pruned) ? "strongly connected"
                    : is_essentially_strongly_connected(pruned)
                        ? "essentially strongly connected"
                        : "not strongly connected (hypothesis unverified)")
                << "\n";
      CanonicalizationResult result = full_pipeline(g);
      std::ofstream out(out_path);
      if (!out) throw Error("cannot write " + out_path);
      out << result.grammar.str();
      if (!report_path.empty()) {
        nlohmann::json q;
        for (const auto& [orig, names] : result.name_map) q[orig] = names;
        std::ofstream rep(report_path);
        if (!rep) throw Error("cannot write " + report_path);
        rep << nlohmann::json{{"Q", q}}.dump(2) << "\n";
      }
      std::cout << "canonical grammar: " << result.grammar.nonterminals().size()
                << " nonterminals, " << result.grammar.rules().size() << " rules\n";
    } else if (cnt->parsed()) {
      Grammar g = load_grammar(in_path);
      CountTable table(g, size);
      std::cout << table.tree_count(nt, size).get_str() << "\n";
    } else if (smp->parsed()) {
      Grammar g = load_grammar(in_path);
      CountTable table(g, size);
      Rng rng(seed);
      for (long long i = 0; i < count; ++i)
        std::cout << table.sample_uniform(nt, size, rng).str() << "\n";
    } else if (per->parsed()) {
      Grammar g = load_grammar(in_path);
      auto inf = infinite_nonterminals(g);
      std::vector<std::string> scope(inf.begin(), inf.end());
      PeriodReport report = detect_period(g, scope, max_size);
      if (as_json) {
        nlohmann::json res;
        for (const auto& [pair, d] : report.residues)
          res.push_back({{"from", pair.first}, {"to", pair.second}, {"d", d}});
        nlohmann::json j{{"period", report.period},
                         {"n0_estimate", report.n0_estimate},
                         {"scope", report.scope},
                         {"residues", res}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "period c = " << report.period
                  << ", n0 estimate = " << report.n0_estimate << "\n";
        for (const auto& [pair, d] : report.residues)
          std::cout << "d(" << pair.first << ", " << pair.second << ") = " << d << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
