#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "treelab/context.hpp"
#include "treelab/errors.hpp"

using namespace treelab;

namespace {

Context C(const char* s) { return Context::parse(s); }

// All contexts (any hole count) of the given size over {a/2, b/1, c/0}.
const std::vector<Context>& contexts_of_size(int n) {
  static std::map<int, std::vector<Context>> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<Context> out;
  if (n == 0) {
    out.push_back(Context::hole());
  } else {
    if (n == 1) out.push_back(Context::leaf("c"));
    for (const Context& k : contexts_of_size(n - 1))
      out.push_back(Context::node("b", {k}));
    for (int i = 0; i <= n - 1; ++i)
      for (const Context& l : contexts_of_size(i))
        for (const Context& r : contexts_of_size(n - 1 - i))
          out.push_back(Context::node("a", {l, r}));
  }
  return memo[n] = std::move(out);
}

std::vector<Context> affine_up_to(int n) {
  std::vector<Context> out;
  for (int s = 0; s <= n; ++s)
    for (const Context& c : contexts_of_size(s))
      if (c.hole_count() <= 1) out.push_back(c);
  return out;
}

}  // namespace

TEST_CASE("context size counts terminals only") {
  CHECK(C("a(b(c),c)").size() == 4);
  CHECK(C("_").size() == 0);
  CHECK(C("a(a(_,c),b(_))").size() == 4);
  CHECK(C("a(a(_,c),b(_))").hole_count() == 2);
}

TEST_CASE("fill replaces holes left to right") {
  CHECK(C("a(_,a(_,_))").fill({C("b(_)"), C("c"), C("_")}) == C("a(b(_),a(c,_))"));
  Tree t = C("a(b(c),c)");
  CHECK(Context::hole().fill({t}) == t);
  CHECK(C("a(_,_)").fill({C("c"), C("c")}) == C("a(c,c)"));
  CHECK_THROWS_AS(C("a(_,_)").fill({C("c")}), ArityError);
}

TEST_CASE("fill_at replaces a single hole") {
  CHECK(C("a(_,a(_,_))").fill_at(C("b(_)"), 2) == C("a(_,a(b(_),_))"));
  CHECK(Context::hole().fill_at(C("c"), 1) == C("c"));
  CHECK(C("a(_,_)").fill_at(Context::hole(), 1) == C("a(_,_)"));
  CHECK_THROWS_AS(C("a(_,_)").fill_at(C("c"), 3), DomainError);
}

TEST_CASE("fill size and hole-count arithmetic") {
  for (int s = 0; s <= 4; ++s) {
    for (const Context& c : contexts_of_size(s)) {
      std::vector<Context> parts;
      for (int i = 0; i < c.hole_count(); ++i)
        parts.push_back(contexts_of_size((i + s) % 3)[0]);
      Context filled = c.fill(parts);
      int part_sizes = 0, part_holes = 0;
      for (const Context& p : parts) {
        part_sizes += p.size();
        part_holes += p.hole_count();
      }
      CHECK(filled.size() == c.size() + part_sizes);
      CHECK(filled.hole_count() == part_holes);
    }
  }
}

TEST_CASE("subcontext examples") {
  CHECK(is_subcontext(C("a(b(_),_)"), C("a(_,a(b(_),c))")));
  Tree t = C("a(b(c),b(c))");
  CHECK(is_subcontext(t, t));
  CHECK_FALSE(is_subcontext(C("b(b(_))"), C("a(b(c),c)")));
  CHECK(is_subcontext(C("_"), C("c")));
}

TEST_CASE("subcontext is reflexive and transitive") {
  std::vector<Context> all;
  for (int s = 0; s <= 3; ++s)
    for (const Context& c : contexts_of_size(s)) all.push_back(c);
  for (const Context& x : all) CHECK(is_subcontext(x, x));
  for (const Context& x : all)
    for (const Context& y : all) {
      if (!is_subcontext(x, y)) continue;
      for (const Context& z : all)
        if (is_subcontext(y, z)) CHECK(is_subcontext(x, z));
    }
}

TEST_CASE("on unary spines, subcontext agrees with subword of serializations") {
  // Words over {f, g} viewed as 1-contexts f(g(f(_))) etc.
  auto word_ctx = [](const std::string& w) {
    Context c = Context::hole();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      c = Context::node(std::string(1, *it), {c});
    return c;
  };
  std::vector<std::string> words;
  for (int len = 0; len <= 6; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::string w;
      for (int i = 0; i < len; ++i) w += (bits >> i) & 1 ? 'g' : 'f';
      words.push_back(w);
    }
  }
  auto is_substr = [](const std::string& w, const std::string& pat) {
    return w.find(pat) != std::string::npos;
  };
  for (const std::string& w1 : words)
    for (const std::string& w2 : words)
      CHECK(is_subcontext(word_ctx(w1), word_ctx(w2)) == is_substr(w2, w1));
}

TEST_CASE("affine serialization lengths") {
  CHECK(serialize_affine(C("c")).size() == 2);
  CHECK(serialize_affine(C("_")).size() == 1);
  CHECK(serialize_affine(C("b(_)")).size() == 3);
  CHECK(serialize_affine(C("a(b(c),c)")).size() == 8);
  CHECK_THROWS_AS(serialize_affine(C("a(_,_)")), ArityError);
}

TEST_CASE("affine serialization is injective up to size 8") {
  std::map<Word, Context> seen;
  long long count_by_size[9] = {0};
  for (const Context& u : affine_up_to(8)) {
    Word w = serialize_affine(u);
    size_t expected = 2 * static_cast<size_t>(u.size()) + static_cast<size_t>(u.hole_count());
    CHECK(w.size() == expected);
    auto [it, inserted] = seen.emplace(std::move(w), u);
    CHECK(inserted);
    ++count_by_size[u.size()];
  }
  // Crude cardinality bound: |affine contexts of size <= n| <= ((|A|+1)^3)^n
  // with A the 7-symbol tag alphabet.
  double gamma = 8.0 * 8.0 * 8.0;
  double bound = 1.0;
  long long cumulative = 0;
  for (int n = 0; n <= 8; ++n) {
    cumulative += count_by_size[n];
    CHECK(static_cast<double>(cumulative) <= bound);
    bound *= gamma;
  }
}

TEST_CASE("find_subword") {
  Word abba = {"a", "b", "b", "a"};
  CHECK(find_subword(abba, {"b", "b"}));
  CHECK(find_subword({}, {}));
  CHECK(find_subword({"a", "b", "a", "b"}, {"a", "b", "a"}));
  CHECK_FALSE(find_subword({"a", "b"}, {"b", "a"}));
}

TEST_CASE("literal parsing") {
  CHECK(C(" a ( b ( c ) , c ) ") == C("a(b(c),c)"));
  CHECK(C("c()") == C("c"));
  CHECK(C("lam{x1:o}(x1)").symbol() == "lam{x1:o}");
  CHECK(C("a(b(c),c)").str() == "a(b(c),c)");
  CHECK(C("a(_,b(_))").str() == "a(_,b(_))");
  CHECK_THROWS_AS(Context::parse("a(b"), ParseError);
  CHECK_THROWS_AS(Context::parse("_x"), ParseError);
  CHECK_THROWS_AS(Context::parse("a(b(c),c) extra"), ParseError);
  CHECK_THROWS_AS(Context::parse("1abc"), ParseError);
}
