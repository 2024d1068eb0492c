#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "treelab/errors.hpp"
#include "treelab/experiment.hpp"

using namespace treelab;

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo experiments for subcontext containment"};
  app.require_subcommand(1);

  std::string grammar_path, nt, pattern_text, csv_path, alphabet = "ab", unit_word = "ab";
  std::vector<int> sizes;
  long long samples = 2000;
  unsigned long long seed = 1;
  double p = 0.15;
  int n = 0, d = 2, i = 2, x = 2, k = 2, threads = 1;
  bool exact = false;

  CLI::App* words = app.add_subcommand("words", "word-case containment trend");
  words->add_option("--alphabet", alphabet, "one character per symbol");
  words->add_option("--word", unit_word, "pattern is this word repeated to scale");
  words->add_option("--sizes", sizes, "word lengths")->required()->delimiter(',');
  words->add_option("--samples", samples);
  words->add_option("--seed", seed);
  words->add_option("-p", p, "pattern scale exponent");
  words->add_option("--threads", threads);
  words->add_option("--csv", csv_path);

  CLI::App* cont = app.add_subcommand("containment", "containment frequency in one slice");
  cont->add_option("--grammar", grammar_path)->required();
  cont->add_option("-N,--nonterminal", nt)->required();
  cont->add_option("-n,--size", n)->required();
  cont->add_option("--pattern", pattern_text)->required();
  cont->add_option("--samples", samples);
  cont->add_option("--seed", seed);
  cont->add_option("--threads", threads);
  cont->add_flag("--exact", exact, "full enumeration instead of sampling");

  CLI::App* main_exp = app.add_subcommand("main", "explosive-pattern containment trend");
  main_exp->add_option("-d,--order", d);
  main_exp->add_option("-i,--arity", i);
  main_exp->add_option("-x,--vars", x);
  main_exp->add_option("-k", k);
  main_exp->add_option("-p", p);
  main_exp->add_option("--sizes", sizes)->required()->delimiter(',');
  main_exp->add_option("--samples", samples);
  main_exp->add_option("--seed", seed);
  main_exp->add_option("--csv", csv_path);
  main_exp->add_option("--threads", threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (words->parsed()) {
      std::vector<std::string> symbols;
      for (char c : alphabet) symbols.emplace_back(1, c);
      Word unit;
      for (char c : unit_word) unit.emplace_back(1, c);
      auto family = [unit](int m) {
        Word out;
        if (!unit.empty())
          for (int reps = m / static_cast<int>(unit.size()); reps > 0; --reps)
            out.insert(out.end(), unit.begin(), unit.end());
        return out;
      };
      TrendReport report = monkey_words(symbols, family, sizes, samples, seed, p, threads);
      if (csv_path.empty()) {
        std::cout << report.csv();
      } else {
        std::ofstream out(csv_path, std::ios::binary);
        out << report.csv();
      }
    } else if (cont->parsed()) {
      Grammar g = load_grammar(grammar_path);
      Context pattern = Context::parse(pattern_text);
      ContainmentResult r;
      if (exact) {
        r = containment_exact(g, nt, n, pattern);
      } else {
        CountTable table(g, n);
        r = containment_mc(table, nt, n, pattern, samples, seed, threads);
      }
      WilsonInterval band = wilson_interval(r.contains, r.samples);
      std::cout << (r.exact ? "exact " : "estimated ") << "frequency " << r.frequency << " ("
                << r.contains << "/" << r.samples << ", wilson [" << band.lo << ", "
                << band.hi << "])\n";
    } else if (main_exp->parsed()) {
      ExperimentConfig cfg;
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.sizes = sizes;
      cfg.p = p;
      cfg.k = k;
      cfg.order_bound = d;
      cfg.arity_bound = i;
      cfg.var_bound = x;
      cfg.csv_path = csv_path;
      cfg.threads = threads;
      TrendReport report = run_main_experiment(cfg);
      for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
      if (csv_path.empty()) std::cout << report.csv();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
