#include <iostream>

#include "CLI11.hpp"

#include "treelab/decompose.hpp"
#include "treelab/errors.hpp"

using namespace treelab;

int main(int argc, char** argv) {
  CLI::App app{"split a tree into a second-order frame and good affine parts"};

  std::string tree_text, grammar_path, nt;
  int m = 2;
  app.add_option("--tree", tree_text, "tree literal")->required();
  app.add_option("-m,--cutoff", m, "goodness cutoff")->required();
  app.add_option("--grammar", grammar_path, "grammar file for the typed decomposition");
  app.add_option("-N,--nonterminal", nt, "nonterminal deriving the tree");

  CLI11_PARSE(app, argc, argv);

  try {
    Tree t = Tree::parse(tree_text);
    if (!t.is_tree()) throw DomainError("input must be a tree (no holes)");
    Decomposition d = decompose(t, m);
    if (!grammar_path.empty()) {
      if (nt.empty()) throw DomainError("a nonterminal is required with --grammar");
      Grammar g = load_grammar(grammar_path);
      d = refine(g, nt, t, m);
    }
    std::cout << "frame: " << d.frame.str() << "\n";
    for (size_t i = 0; i < d.parts.size(); ++i)
      std::cout << "part " << i + 1 << ": " << d.parts[i].str() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
