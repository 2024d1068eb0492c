#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treelab/analysis.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/grammar.hpp"

using namespace treelab;

namespace {

Grammar g0() {
  return parse_grammar(
      "terminal a 2\n"
      "terminal b 1\n"
      "terminal c 0\n"
      "rule A0 -> a(B0,B0)\n"
      "rule A0 -> c\n"
      "rule B0 -> b(A0)\n");
}

// The paper's non-strongly-connected example.
Grammar g1() {
  return parse_grammar(
      "terminal a 2\nterminal b 1\nterminal c 0\n"
      "rule A1 -> a(c,A1)\n"
      "rule A1 -> b(B1)\n"
      "rule B1 -> b(B1)\n"
      "rule B1 -> c\n");
}

Grammar ambiguous_fixture() {
  return parse_grammar(
      "terminal a 2\nterminal c 0\n"
      "rule A -> a(B,C)\n"
      "rule A -> a(D,E)\n"
      "rule B -> c\nrule C -> c\nrule D -> c\nrule E -> c\n");
}

Tree T(const char* s) { return Tree::parse(s); }

}  // namespace

TEST_CASE("grammar parsing and validation") {
  Grammar g = g0();
  CHECK(g.nonterminals().size() == 2);
  CHECK(g.rules().size() == 3);
  CHECK(g.is_canonical());
  CHECK_THROWS_AS(parse_grammar("terminal a 1\nrule A -> a(Bogus)\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("terminal a 2\nterminal c 0\nrule A -> a(c)\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("terminal a 1\nrule a -> a(a)\n"), ParseError);
  // Round trip through the printed form.
  Grammar back = parse_grammar(g.str());
  CHECK(back.rules() == g.rules());
}

TEST_CASE("tree enumeration matches the worked examples") {
  Grammar g = g0();
  Enumerator e(g);
  CHECK(e.trees("A0", 1) == std::set<Tree>{T("c")});
  CHECK(e.trees("A0", 5) == std::set<Tree>{T("a(b(c),b(c))")});
  CHECK(e.trees("A0", 2).empty());
  CHECK(e.trees("B0", 2) == std::set<Tree>{T("b(c)")});
  CHECK(e.trees("A0", 9).size() == 2);
}

TEST_CASE("context enumeration matches the worked examples") {
  Grammar g = g0();
  Enumerator e(g);
  CHECK(e.contexts({{"B0", "B0"}, "A0"}, 1) == std::set<Context>{Context::parse("a(_,_)")});
  CHECK(e.contexts({{"A0"}, "A0"}, 4).count(Context::parse("a(b(_),b(c))")) == 1);
  CHECK(e.contexts({{"A0"}, "A0"}, 0) == std::set<Context>{Context::hole()});
  CHECK(e.contexts({{"B0"}, "A0"}, 0).empty());
}

TEST_CASE("enumeration respects its budget") {
  Grammar g = g0();
  Enumerator e(g, 5);
  CHECK_THROWS_AS(e.trees("A0", 13), BudgetError);
}

TEST_CASE("leftmost derivation counting") {
  Grammar g = g0();
  Enumerator e(g);
  CHECK(e.count_leftmost_derivations("A0", T("c"), 1000) == 1);
  CHECK(e.count_leftmost_derivations("A0", T("a(b(c),b(c))"), 1000) == 1);
  CHECK(e.count_leftmost_derivations("A0", T("b(c)"), 1000) == 0);

  Grammar amb = ambiguous_fixture();
  Enumerator ea(amb);
  CHECK(ea.count_leftmost_derivations("A", T("a(c,c)"), 1000) == 2);

  // Unit cycles make the count infinite; it saturates at the cap.
  Grammar loop = parse_grammar(
      "terminal c 0\n"
      "rule N -> M\nrule M -> N\nrule N -> c\n");
  Enumerator el(loop);
  CHECK(el.count_leftmost_derivations("N", T("c"), 99) == 99);
}

TEST_CASE("bounded unambiguity check") {
  CHECK(check_unambiguous_up_to(g0(), 12));
  CHECK_FALSE(check_unambiguous_up_to(ambiguous_fixture(), 3));
}

TEST_CASE("reachability") {
  Grammar g = g0();
  CHECK(reachable(g, "A0", "B0"));
  CHECK(reachable(g, "B0", "A0"));
  CHECK(reachable(g, "A0", "A0"));
  Grammar h = g1();
  CHECK(reachable(h, "A1", "B1"));
  CHECK_FALSE(reachable(h, "B1", "A1"));

  Grammar unpruned = parse_grammar(
      "terminal a 2\nterminal c 0\n"
      "rule A -> a(A,B)\nrule B -> c\n");
  CHECK_THROWS_AS(reachable(unpruned, "A", "B"), DomainError);
}

TEST_CASE("infinite nonterminals") {
  CHECK(infinite_nonterminals(g0()) == std::set<std::string>{"A0", "B0"});
  Grammar finite = parse_grammar("terminal c 0\nrule A -> c\n");
  CHECK(infinite_nonterminals(finite).empty());
  Grammar chain = parse_grammar(
      "terminal a 1\nterminal b 1\nterminal k 1\nterminal c 0\n"
      "rule A -> a(B)\nrule B -> b(A)\nrule A -> k(C)\nrule C -> c\n");
  CHECK(infinite_nonterminals(chain) == std::set<std::string>{"A", "B"});
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(g0()));
  CHECK(is_essentially_strongly_connected(g0()));
  CHECK_FALSE(is_strongly_connected(g1()));
  Grammar word = parse_grammar("terminal a 1\nterminal e 0\nrule N -> a(N)\nrule N -> e\n");
  CHECK(is_strongly_connected(word));
  // Strong connectivity implies essential strong connectivity.
  CHECK(is_essentially_strongly_connected(word));
}
