#include "benchmark/benchmark.h"

#include "treelab/counting.hpp"
#include "treelab/decompose.hpp"
#include "treelab/lambda/beta.hpp"
#include "treelab/lambda/explosive.hpp"
#include "treelab/lambda/grammar.hpp"

using namespace treelab;

namespace {

Grammar g0() {
  return parse_grammar(
      "terminal a 2\nterminal b 1\nterminal c 0\n"
      "rule A0 -> a(B0,B0)\nrule A0 -> c\nrule B0 -> b(A0)\n");
}

const lambda::LambdaGrammar& e222() {
  static lambda::LambdaGrammar g =
      lambda::restrict_reachable(lambda::build_lambda_grammar(2, 2, 2));
  return g;
}

void CountBuild(benchmark::State& state) {
  Grammar g = g0();
  for (auto _ : state) {
    CountTable table(g, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(table.tree_count("A0", static_cast<int>(state.range(0))));
  }
}
BENCHMARK(CountBuild)->Arg(64)->Arg(256)->Arg(1024);

void CountBuildLambda(benchmark::State& state) {
  const Grammar& g = e222().grammar;
  for (auto _ : state) {
    CountTable table(g, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(table.max_size());
  }
}
BENCHMARK(CountBuildLambda)->Arg(100)->Arg(400);

void SampleUniform(benchmark::State& state) {
  const Grammar& g = e222().grammar;
  int n = static_cast<int>(state.range(0));
  CountTable table(g, n);
  std::string nt = lambda::nt_name({}, lambda::SimpleType::parse("o->o"));
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(table.sample_uniform(nt, n, rng));
}
BENCHMARK(SampleUniform)->Arg(50)->Arg(400);

void DecomposeTree(benchmark::State& state) {
  Grammar g = g0();
  int n = 1601;  // sizes of L(G0, A0) are 1 mod 4
  CountTable table(g, n);
  Rng rng(3);
  Tree t = table.sample_uniform("A0", n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(t, static_cast<int>(state.range(0))));
}
BENCHMARK(DecomposeTree)->Arg(3)->Arg(8);

void SubcontextScan(benchmark::State& state) {
  Grammar g = g0();
  CountTable table(g, 801);
  Rng rng(5);
  Tree hay = table.sample_uniform("A0", 801, rng);
  Context needle = Context::parse("a(b(a(_,b(c))),b(c))");
  for (auto _ : state) benchmark::DoNotOptimize(is_subcontext(needle, hay));
}
BENCHMARK(SubcontextScan);

void GreedyBeta(benchmark::State& state) {
  lambda::LambdaTerm t = lambda::explosive(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lambda::greedy_reduction_length(t));
}
BENCHMARK(GreedyBeta)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
