#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "treelab/counting.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"

using namespace treelab;

namespace {

Grammar g0() {
  return parse_grammar(
      "terminal a 2\nterminal b 1\nterminal c 0\n"
      "rule A0 -> a(B0,B0)\nrule A0 -> c\nrule B0 -> b(A0)\n");
}

Grammar ambiguous_fixture() {
  return parse_grammar(
      "terminal a 2\nterminal c 0\n"
      "rule A -> a(B,C)\nrule A -> a(D,E)\n"
      "rule B -> c\nrule C -> c\nrule D -> c\nrule E -> c\n");
}

// Appendix-style periodicity fixture; the nullary terminal is renamed to d
// so every symbol has a single rank.
Grammar period_fixture() {
  return parse_grammar(
      "terminal a 1\nterminal b 1\nterminal k 1\nterminal d 0\n"
      "rule A -> a(B)\nrule B -> b(A)\nrule A -> k(C)\nrule C -> d\n");
}

Grammar period_fixture_extended() {
  return parse_grammar(
      "terminal a 1\nterminal b 1\nterminal k 1\nterminal d 0\n"
      "rule A -> a(B)\nrule B -> b(A)\nrule A -> k(C)\nrule C -> d\n"
      "rule A -> a(A1)\nrule A1 -> a(A2)\nrule A2 -> a(A)\n");
}

}  // namespace

TEST_CASE("tree counts match the enumeration oracle") {
  Grammar g = g0();
  CountTable table(g, 12);
  Enumerator e(g);
  std::vector<long> expect_a0 = {1, 0, 0, 0, 1, 0, 0, 0, 2};
  for (int n = 1; n <= 9; ++n)
    CHECK(table.tree_count("A0", n) == expect_a0[static_cast<size_t>(n - 1)]);
  for (const std::string& nt : g.nonterminals()) {
    CHECK(table.tree_count(nt, 0) == 0);
    for (int n = 0; n <= 12; ++n)
      CHECK(table.tree_count(nt, n) == static_cast<long>(e.trees(nt, n).size()));
  }
  CHECK_THROWS_AS(table.tree_count("A0", 13), DomainError);
}

TEST_CASE("context counts match the enumeration oracle") {
  Grammar g = g0();
  CountTable table(g, 12);
  Enumerator e(g);
  CHECK(table.context_count("A0", "A0", 4) >= 1);
  for (const std::string& inner : g.nonterminals()) {
    for (const std::string& outer : g.nonterminals()) {
      CHECK(table.context_count(inner, outer, 0) == (inner == outer ? 1 : 0));
      for (int n = 0; n <= 12; ++n)
        CHECK(table.context_count(inner, outer, n) ==
              static_cast<long>(e.contexts({{inner}, outer}, n).size()));
    }
  }
}

TEST_CASE("counts on the ambiguous fixture count derivations") {
  // On an ambiguous grammar the DP counts leftmost derivations, which is the
  // enumeration cardinality weighted by derivation multiplicity.
  Grammar g = ambiguous_fixture();
  CountTable table(g, 12);
  Enumerator e(g);
  for (const std::string& nt : g.nonterminals()) {
    for (int n = 0; n <= 12; ++n) {
      unsigned long long weighted = 0;
      for (const Tree& t : e.trees(nt, n))
        weighted += e.count_leftmost_derivations(nt, t, 1'000'000);
      CHECK(table.tree_count(nt, n) == static_cast<long>(weighted));
    }
  }
  CHECK(table.tree_count("A", 3) == 2);  // two derivations of a(c,c)
}

TEST_CASE("counting and sampling with a ternary terminal") {
  Grammar g = parse_grammar(
      "terminal t 3\nterminal c 0\n"
      "rule A -> t(A,A,A)\nrule A -> c\n");
  CountTable table(g, 13);
  Enumerator e(g);
  for (int n = 0; n <= 13; ++n)
    CHECK(table.tree_count("A", n) == static_cast<long>(e.trees("A", n).size()));
  CHECK(table.tree_count("A", 7) == 3);

  // Uniformity across the general-arity sampling path.
  const std::set<Tree>& lang = e.trees("A", 10);
  REQUIRE(!lang.empty());
  Rng rng(17);
  std::map<std::string, int> freq;
  int draws = 12000;
  for (int i = 0; i < draws; ++i) ++freq[table.sample_uniform("A", 10, rng).str()];
  CHECK(freq.size() == lang.size());
  double p = 1.0 / static_cast<double>(lang.size());
  double sigma = std::sqrt(draws * p * (1 - p));
  for (const auto& [key, count] : freq)
    CHECK(std::abs(count - draws * p) <= 5 * sigma);
}

TEST_CASE("count table extension preserves prefixes") {
  Grammar g = g0();
  CountTable small(g, 6);
  CountTable big(g, 12);
  small.extend(12);
  for (const std::string& nt : g.nonterminals())
    for (int n = 0; n <= 12; ++n) CHECK(small.tree_count(nt, n) == big.tree_count(nt, n));
}

TEST_CASE("counting requires a canonical grammar") {
  Grammar semi = parse_grammar("terminal c 0\nrule N -> M\nrule M -> c\n");
  CHECK_THROWS_AS(CountTable(semi, 4), DomainError);
}

TEST_CASE("uniform sampling") {
  Grammar g = g0();
  CountTable table(g, 13);
  Rng rng(42);
  CHECK(table.sample_uniform("A0", 1, rng) == Tree::parse("c"));
  CHECK_THROWS_AS(table.sample_uniform("A0", 2, rng), EmptySliceError);

  // Frequencies of the two size-9 trees stay within 5 sigma of 1/2.
  std::map<std::string, int> freq;
  int draws = 4000;
  for (int i = 0; i < draws; ++i) freq[table.sample_uniform("A0", 9, rng).str()]++;
  CHECK(freq.size() == 2);
  double sigma = std::sqrt(draws * 0.25);
  for (const auto& [key, count] : freq)
    CHECK(std::abs(count - draws / 2.0) <= 5 * sigma);

  // Every size-13 tree (there are 5) appears under uniform sampling.
  Enumerator e(g);
  CHECK(e.trees("A0", 13).size() == 5);
  std::map<std::string, int> freq13;
  for (int i = 0; i < 5000; ++i) freq13[table.sample_uniform("A0", 13, rng).str()]++;
  CHECK(freq13.size() == 5);
}

TEST_CASE("sampling is deterministic in the seed") {
  Grammar g = g0();
  CountTable table(g, 13);
  Rng r1(7), r2(7), r3(8);
  std::string a, b, c;
  for (int i = 0; i < 20; ++i) {
    a += table.sample_uniform("A0", 13, r1).str();
    b += table.sample_uniform("A0", 13, r2).str();
    c += table.sample_uniform("A0", 13, r3).str();
  }
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("rng draws uniformly below a bound") {
  Rng rng(1);
  std::map<int, int> freq;
  for (int i = 0; i < 3000; ++i) freq[static_cast<int>(rng.below(3).get_si())]++;
  CHECK(freq.size() == 3);
  for (const auto& [v, count] : freq) {
    CHECK(v >= 0);
    CHECK(v < 3);
    CHECK(std::abs(count - 1000.0) < 5 * std::sqrt(3000 * (1.0 / 3) * (2.0 / 3)));
  }
}

TEST_CASE("periodicity of the worked example") {
  Grammar g = period_fixture();
  PeriodReport report = detect_period(g, {"A", "B"}, 24);
  CHECK(report.period == 2);
  CHECK(report.residues.at({"A", "A"}) == 0);
  CHECK(report.residues.at({"B", "B"}) == 0);
  CHECK(report.residues.at({"A", "B"}) == 1);
  CHECK(report.residues.at({"B", "A"}) == 1);
  CHECK(report.n0_estimate == 0);

  // Residue laws (also validated internally).
  for (const std::string& n : report.scope)
    CHECK(report.residues.at({n, n}) == 0);
  for (const std::string& a : report.scope)
    for (const std::string& b : report.scope)
      for (const std::string& c : report.scope)
        CHECK((report.residues.at({a, b}) + report.residues.at({b, c})) % report.period ==
              report.residues.at({a, c}));
}

TEST_CASE("periodicity collapses to 1 with the three-rule extension") {
  Grammar g = period_fixture_extended();
  PeriodReport report = detect_period(g, {"A", "A1", "A2", "B"}, 40);
  CHECK(report.period == 1);
  for (const auto& [pair, d] : report.residues) CHECK(d == 0);
  CHECK(report.n0_estimate == 6);
}

TEST_CASE("periodicity of a single self-loop") {
  Grammar g = parse_grammar("terminal a 1\nterminal c 0\nrule A -> a(A)\nrule A -> c\n");
  PeriodReport report = detect_period(g, {"A"}, 16);
  CHECK(report.period == 1);
  CHECK(report.residues.at({"A", "A"}) == 0);
}

TEST_CASE("periodicity needs enough witnesses") {
  Grammar g = period_fixture();
  CHECK_THROWS_AS(detect_period(g, {"A", "B"}, 1), InsufficientDataError);
  CHECK_THROWS_AS(detect_period(g, {"A", "C"}, 24), DomainError);  // C is finite
}

TEST_CASE("aperiodicity verdicts") {
  Grammar loop = parse_grammar("terminal a 1\nterminal c 0\nrule A -> a(A)\nrule A -> c\n");
  CountTable t1(loop, 20);
  AperiodicityVerdict v1 = is_aperiodic(t1, "A", 20);
  CHECK(v1.kind == AperiodicityVerdict::AperiodicUpTo);
  CHECK(v1.n0 == 1);

  Grammar g = g0();
  CountTable t2(g, 21);
  AperiodicityVerdict v2 = is_aperiodic(t2, "A0", 21);
  CHECK(v2.kind == AperiodicityVerdict::PeriodicWithGaps);

  Grammar single = parse_grammar("terminal c 0\nrule A -> c\n");
  CountTable t3(single, 10);
  AperiodicityVerdict v3 = is_aperiodic(t3, "A", 10);
  CHECK(v3.kind == AperiodicityVerdict::PeriodicWithGaps);
}
