#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "term_oracle.hpp"
#include "treelab/analysis.hpp"
#include "treelab/counting.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/lambda/beta.hpp"
#include "treelab/lambda/explosive.hpp"
#include "treelab/lambda/grammar.hpp"
#include "treelab/lambda/typecheck.hpp"

using namespace treelab;
using namespace treelab::lambda;

namespace {

LambdaTerm L(const char* s) { return LambdaTerm::parse(s); }

}  // namespace

TEST_CASE("simple types: order, arity, parsing") {
  SimpleType t2 = SimpleType::parse("(o->o)->o->o");
  CHECK(t2.order() == 2);
  CHECK(t2.internal_arity() == 2);
  SimpleType t3 = SimpleType::parse("((o->o)->o->o)->(o->o)->o->o");
  CHECK(t3.order() == 3);
  CHECK(t3.internal_arity() == 3);
  CHECK(SimpleType::base().order() == 0);
  CHECK(SimpleType::parse(t3.str()) == t3);
  CHECK(SimpleType::parse("o->o->o").str() == "o->o->o");

  CHECK(types_up_to(0, 5).size() == 1);
  CHECK(types_up_to(1, 1).size() == 2);
  CHECK(types_up_to(2, 2).size() == 13);
  CHECK(types_up_to(-1, 2).empty());
}

TEST_CASE("term parsing and printing") {
  LambdaTerm t = L("\\x:o.(\\y:o->o.y) (\\*:o.x)");
  CHECK(t.kind() == LambdaTerm::Kind::Abs);
  CHECK(t.size() == 6);
  CHECK(LambdaTerm::parse(t.str()) == t);
  CHECK(L("x y z").size() == 5);  // left-associative application
  CHECK(L("x (y z)") != L("x y z"));
  // The abstraction body extends as far right as possible.
  CHECK(L("\\x:o.x y") == LambdaTerm::abs("x", SimpleType::base(),
                                          LambdaTerm::app(L("x"), L("y"))));
  CHECK_THROWS_AS(LambdaTerm::parse("\\x.x"), ParseError);  // annotation required
}

TEST_CASE("typechecking the worked judgments") {
  auto id = typecheck(L("\\x:o.x"));
  REQUIRE(id);
  CHECK(id->env.empty());
  CHECK(id->type == SimpleType::parse("o->o"));
  CHECK(id->order == 1);
  CHECK(id->internal_arity == 1);

  auto tw2 = typecheck(twice(2));
  REQUIRE(tw2);
  CHECK(twice(2).size() == 7);
  CHECK(tw2->type == SimpleType::parse("(o->o)->o->o"));
  CHECK(tw2->order == 2);
  CHECK(tw2->internal_arity == 2);

  CHECK_FALSE(typecheck(L("x x")));

  LambdaTerm t = LambdaTerm::app(
      LambdaTerm::app(LambdaTerm::app(twice(3), twice(2)), L("\\x:o.x")), L("y"));
  auto j = typecheck(t);
  REQUIRE(j);
  CHECK(j->type == SimpleType::base());
  CHECK(j->env.at("y") == SimpleType::base());
  CHECK(j->order == 3);
  CHECK(j->internal_arity == 3);
}

TEST_CASE("alpha equivalence treats the unused binder as a plain name") {
  LambdaTerm t1 = L("\\x:o.(\\y:o->o.y) (\\z:o.x)");
  LambdaTerm t2 = L("\\x:o.(\\x:o->o.x) (\\*:o.x)");
  CHECK(alpha_eq(t1, t2));
  CHECK_FALSE(alpha_eq(L("\\x:o.x"), L("\\*:o.x")));
  CHECK(alpha_eq(t1, t1));
  CHECK_FALSE(alpha_eq(L("\\x:o.x"), L("\\x:o->o.x")));  // annotations matter
  // Shadowing: the inner binder wins.
  CHECK(alpha_eq(L("\\x:o.\\x:o.x"), L("\\x:o.\\y:o.y")));
  CHECK_FALSE(alpha_eq(L("\\x:o.\\x:o.x"), L("\\x:o.\\y:o.x")));
}

TEST_CASE("num_vars minimizes names") {
  CHECK(num_vars(L("\\x:o.(\\y:o->o.y) (\\z:o.x)")) == 1);
  CHECK(num_vars(L("\\x:o.\\*:o.\\*:o.x")) == 1);
  CHECK(num_vars(L("x")) == 1);
  CHECK(num_vars(L("\\x:o.\\y:o.x y")) == 2);
}

TEST_CASE("num_vars agrees with brute-force minimization on tiny terms") {
  oracle::TermEnumerator en({SimpleType::base(), SimpleType::parse("o->o")});
  for (int n = 1; n <= 6; ++n) {
    for (const LambdaTerm& t : en.closed(n)) {
      // Brute force: try all binder-name assignments from a 3-name pool,
      // with unused binders allowed to become `*`.
      int binders = 0;
      std::function<void(const LambdaTerm&)> count = [&](const LambdaTerm& u) {
        if (u.kind() == LambdaTerm::Kind::Abs) {
          ++binders;
          count(u.body());
        } else if (u.kind() == LambdaTerm::Kind::App) {
          count(u.fn());
          count(u.arg());
        }
      };
      count(t);
      int best = 1 << 20;
      std::vector<std::string> pool = {"p1", "p2", "p3"};
      std::vector<int> choice(static_cast<size_t>(binders), 0);
      std::function<void(size_t)> assign = [&](size_t i) {
        if (i == choice.size()) {
          size_t idx = 0;
          std::function<std::optional<LambdaTerm>(const LambdaTerm&)> rebuild =
              [&](const LambdaTerm& u) -> std::optional<LambdaTerm> {
            switch (u.kind()) {
              case LambdaTerm::Kind::Var:
                return u;
              case LambdaTerm::Kind::Abs: {
                int c = choice[idx++];
                std::optional<std::string> binder;
                if (c < 3) binder = pool[static_cast<size_t>(c)];
                LambdaTerm body = u.binder()
                                      ? swap_names(u.body(), *u.binder(),
                                                   binder ? *binder : "unusedmark")
                                      : u.body();
                if (!binder && u.binder() && u.body().free_vars().count(*u.binder()))
                  return std::nullopt;  // * cannot bind an occurring variable
                auto b2 = rebuild(body);
                if (!b2) return std::nullopt;
                return LambdaTerm::abs(binder, u.binder_type(), *b2);
              }
              case LambdaTerm::Kind::App: {
                auto f = rebuild(u.fn());
                if (!f) return std::nullopt;
                auto a = rebuild(u.arg());
                if (!a) return std::nullopt;
                return LambdaTerm::app(*f, *a);
              }
            }
            return std::nullopt;
          };
          auto variant = rebuild(t);
          if (variant && alpha_eq(*variant, t)) {
            std::set<std::string> names;
            std::function<void(const LambdaTerm&)> collect = [&](const LambdaTerm& u) {
              switch (u.kind()) {
                case LambdaTerm::Kind::Var:
                  names.insert(u.name());
                  break;
                case LambdaTerm::Kind::Abs:
                  if (u.binder()) names.insert(*u.binder());
                  collect(u.body());
                  break;
                case LambdaTerm::Kind::App:
                  collect(u.fn());
                  collect(u.arg());
                  break;
              }
            };
            collect(*variant);
            best = std::min(best, static_cast<int>(names.size()));
          }
          return;
        }
        for (int c = 0; c < 4; ++c) {
          choice[i] = c;
          assign(i + 1);
        }
      };
      assign(0);
      if (best <= 3)  // pool large enough for terms of this size
        CHECK(num_vars(t) == best);
    }
  }
}

TEST_CASE("beta steps") {
  auto r1 = beta_step_all(L("(\\x:o.x) y"));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == L("y"));

  auto r2 = beta_step_all(L("(\\x:o.\\*:o.x) z z"));
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == L("(\\*:o.z) z"));

  CHECK(beta_step_all(L("\\x:o.x")).empty());

  // Capture avoidance: substituting y under a binder named y.
  auto r3 = beta_step_all(L("(\\x:o->o.\\y:o.x y) y"));
  REQUIRE(r3.size() == 1);
  CHECK(alpha_eq(r3[0], L("\\z:o.y z")));
}

TEST_CASE("beta_max_len basics") {
  CHECK(beta_max_len(L("\\x:o.x")).length == 0);
  CHECK(beta_max_len(L("(\\x:o.x) y")).length == 1);
  // Erasing redexes still count the argument's own reductions first.
  BetaResult r = beta_max_len(L("(\\*:o.y) ((\\x:o.x) z)"));
  CHECK(r.exact);
  CHECK(r.length == 2);
}

TEST_CASE("beta_max_len agrees with unmemoized search on small closed terms") {
  // Exhaustive reference: plain recursion over reducts without memoization.
  std::function<long long(const LambdaTerm&)> plain = [&](const LambdaTerm& t) -> long long {
    long long best = 0;
    for (const LambdaTerm& s : beta_step_all(t)) best = std::max(best, 1 + plain(s));
    return best;
  };
  oracle::TermEnumerator en(types_up_to(1, 2));
  for (int n = 1; n <= 7; ++n)
    for (const LambdaTerm& t : en.closed_within(n, 2, 2, 2)) {
      long long exact = plain(t);
      CHECK(beta_max_len(t).length == exact);
      // The greedy strategy is maximal on this whole sample, which backs
      // using its length as the certified lower bound on larger terms.
      CHECK(greedy_reduction_length(t) == exact);
    }
}

TEST_CASE("explosive terms have the stated shape") {
  for (int m = 1; m <= 5; ++m)
    for (int k = 2; k <= 5; ++k) {
      LambdaTerm t = explosive(m, k);
      CHECK(t.size() == 8 * m + 8 * k - 2);
      auto j = typecheck(t);
      REQUIRE(j);
      CHECK(j->env.empty());
      CHECK(j->type == SimpleType::parse("o->o"));
      CHECK(j->order == k);
      CHECK(j->internal_arity == k);
      CHECK(num_vars(t) == 2);
    }
  CHECK_THROWS_AS(explosive(0, 2), DomainError);
  CHECK_THROWS_AS(explosive(1, 1), DomainError);
}

TEST_CASE("explosive terms reduce for a long time") {
  CHECK(iterated_exp(2, 1) == 4);
  CHECK(iterated_exp(2, 2) == 16);
  BetaResult b1 = beta_max_len(explosive(1, 2));
  CHECK(b1.exact);
  CHECK(b1.length == 15);  // frozen from the exhaustive search
  CHECK(b1.length >= 4);
  // The m=2 interleaving space is far beyond any practical state budget;
  // the search certifies the bound through its greedy fallback.
  BetaResult b2 = beta_max_len(explosive(2, 2), 50'000);
  CHECK(b2.length >= 16);
  CHECK(greedy_reduction_length(explosive(1, 2)) >= 4);
  CHECK(greedy_reduction_length(explosive(2, 2)) >= 16);
}

TEST_CASE("the lambda grammar at (1,1,1) is the worked example") {
  LambdaGrammar lg = build_lambda_grammar(1, 1, 1);
  CHECK(lg.grammar.nonterminals().size() == 3);
  CHECK(lg.grammar.rules().size() == 5);
  CHECK(lg.grammar.is_canonical());
  CHECK(lg.nt_info.count("N{|-o->o}"));
  CHECK(lg.nt_info.count("N{x1:o|-o}"));
  CHECK(lg.nt_info.count("N{x1:o|-o->o}"));
  CHECK(lg.closed_nonterminals() == std::vector<std::string>{"N{|-o->o}"});

  Enumerator e(lg.grammar);
  CHECK(e.trees("N{|-o->o}", 2) ==
        std::set<Tree>{Tree::parse("lam{x1:o}(x1)")});
}

TEST_CASE("nonterminal name codec round-trips") {
  TypeEnv env{{"x1", SimpleType::base()}, {"x2", SimpleType::parse("o->o")}};
  std::string name = nt_name(env, SimpleType::base());
  CHECK(name == "N{x1:o,x2:o->o|-o}");
  auto [env2, tau2] = parse_nt_name(name);
  CHECK(env2 == env);
  CHECK(tau2 == SimpleType::base());
}

TEST_CASE("degenerate bounds give an empty grammar") {
  LambdaGrammar lg = build_lambda_grammar(0, 0, 0);
  CHECK(lg.grammar.nonterminals().empty());
  CHECK(lg.grammar.rules().empty());
}

TEST_CASE("a small term witnesses L_4 of the (1,3,1) grammar") {
  // \x.\y.\z.x has order 1, internal arity 3, and needs one variable name.
  LambdaGrammar lg = build_lambda_grammar(1, 3, 1);
  Tree witness = rename_canonical(L("\\x:o.\\y:o.\\z:o.x"), 1);
  CHECK(witness == Tree::parse("lam{x1:o}(lam{*:o}(lam{*:o}(x1)))"));
  std::string nt = nt_name({}, SimpleType::parse("o->o->o->o"));
  Enumerator e(lg.grammar);
  CHECK(e.trees(nt, 4).count(witness) == 1);
}

TEST_CASE("embed and rename are mutually inverse up to alpha") {
  LambdaTerm t = L("\\x:o.(\\y:o->o.y) (\\z:o.x)");
  Tree renamed = rename_canonical(t, 1);
  CHECK(renamed ==
        Tree::parse("lam{x1:o}(app(lam{x1:o->o}(x1),lam{*:o}(x1)))"));
  CHECK(alpha_eq(embed(renamed), t));

  CHECK_THROWS_AS(rename_canonical(L("\\x:o.\\y:o.x y"), 1), DomainError);
  CHECK(rename_canonical(L("\\x:o.\\y:o.x y"), 2) ==
        Tree::parse("lam{x1:o}(lam{x2:o}(app(x1,x2)))"));
}

TEST_CASE("embed-rename round trip on all small closed typable terms") {
  oracle::TermEnumerator en(types_up_to(1, 2));
  for (int n = 1; n <= 7; ++n)
    for (const LambdaTerm& t : en.closed_within(n, 2, 2, 2)) {
      Tree tr = rename_canonical(t, 2);
      CHECK(alpha_eq(embed(tr), t));
      CHECK(tr.size() == t.size());
    }
}

TEST_CASE("grammar counts match alpha-class counts at (1,1,1) and (2,2,1)") {
  for (auto [d, i, x] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 2, 1}}) {
    LambdaGrammar lg = build_lambda_grammar(d, i, x);
    CountTable table(lg.grammar, 8);
    oracle::TermEnumerator en(types_up_to(d - 1, i));
    for (int n = 1; n <= 8; ++n) {
      mpz_class total = 0;
      for (const std::string& nt : lg.closed_nonterminals()) total += table.tree_count(nt, n);
      size_t classes = en.closed_within(n, d, i, x).size();
      CHECK(total == static_cast<long>(classes));
    }
  }
}

TEST_CASE("the embedding is injective on enumerated grammar trees") {
  LambdaGrammar lg = build_lambda_grammar(1, 1, 1);
  Enumerator e(lg.grammar);
  for (const std::string& nt : lg.grammar.nonterminals()) {
    for (int n = 1; n <= 8; ++n) {
      std::set<std::string> keys;
      size_t count = 0;
      for (const Tree& t : e.trees(nt, n)) {
        keys.insert(alpha_key(embed(t)));
        ++count;
      }
      CHECK(keys.size() == count);
    }
  }
}

TEST_CASE("bounded unambiguity of the lambda grammars") {
  CHECK(check_unambiguous_up_to(build_lambda_grammar(1, 1, 1).grammar, 10));
  CHECK(check_unambiguous_up_to(build_lambda_grammar(2, 2, 1).grammar, 8, 20'000'000));
}

TEST_CASE("containing an explosive pattern forces a long reduction") {
  // Wrap the explosive term so its rename tree is a proper subcontext.
  auto wrap = [](const LambdaTerm& inner) {
    return LambdaTerm::app(
        LambdaTerm::abs("f", SimpleType::parse("o->o"), LambdaTerm::var("f")), inner);
  };
  for (int m = 1; m <= 3; ++m) {
    LambdaTerm expl_term = explosive(m, 2);
    LambdaTerm t = wrap(expl_term);
    CHECK(is_subcontext(rename_canonical(expl_term, 2), rename_canonical(t, 2)));
    long long bound = iterated_exp(2, m);
    // m = 1 stays within the exhaustive search; larger m certify through the
    // greedy lower bound.
    BetaResult r = beta_max_len(t, m == 1 ? 1'000'000 : 20'000);
    CHECK(r.length >= bound);
    if (m == 1) CHECK(r.exact);
  }
}

TEST_CASE("the restricted grammar keeps reachable nonterminals") {
  LambdaGrammar g111 = build_lambda_grammar(1, 1, 1);
  LambdaGrammar e111 = restrict_reachable(g111);
  CHECK(e111.grammar.nonterminals().size() == 3);

  LambdaGrammar g222 = build_lambda_grammar(2, 2, 2);
  LambdaGrammar e222 = restrict_reachable(g222);
  CHECK(e222.grammar.nonterminals().size() <= g222.grammar.nonterminals().size());
  CHECK(is_strongly_connected(e222.grammar));

  // Aperiodicity witness at small sizes: L_n of the o->o slice is nonempty
  // from size 5 up (checked to 12 here; the acceptance suite goes to 30).
  CountTable table(e222.grammar, 12);
  std::string nt = nt_name({}, SimpleType::parse("o->o"));
  for (int n = 5; n <= 12; ++n) CHECK(table.tree_count(nt, n) > 0);
  CHECK(table.tree_count(nt, 4) == 0);

  // At (2,1,1) the slice {x1:o->o} |- o->o is inhabited (by x1) but no rule
  // of a closed derivation can reach it: the arity bound kills the needed
  // application shapes. The restriction drops it.
  LambdaGrammar g211 = build_lambda_grammar(2, 1, 1);
  LambdaGrammar e211 = restrict_reachable(g211);
  std::string orphan =
      nt_name({{"x1", SimpleType::parse("o->o")}}, SimpleType::parse("o->o"));
  CHECK(g211.nt_info.count(orphan) == 1);
  CHECK(e211.nt_info.count(orphan) == 0);
}
