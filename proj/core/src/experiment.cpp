#include "treelab/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/lambda/explosive.hpp"
#include "treelab/lambda/grammar.hpp"

namespace treelab {

WilsonInterval wilson_interval(long long successes, long long samples, double z) {
  if (samples <= 0) return {0.0, 1.0};
  double n = static_cast<double>(samples);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string TrendReport::csv() const {
  std::string out = "n,m,pattern_size,samples,contains,frequency,wilson_lo,wilson_hi,seed\n";
  char buf[256];
  for (const TrendRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%lld,%lld,%.6f,%.6f,%.6f,%llu\n", r.n, r.m,
                  r.pattern_size, r.samples, r.contains, r.frequency, r.wilson_lo, r.wilson_hi,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

namespace {

constexpr long long kChunk = 64;

// Runs `samples` Monte-Carlo draws split into fixed-size chunks with one RNG
// stream per chunk, so results are independent of the thread count.
long long run_chunks(long long samples, std::uint64_t seed, int threads,
                     const std::function<long long(Rng&, long long)>& chunk_fn) {
  if (samples <= 0) return 0;
  long long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long long> results(static_cast<size_t>(chunks), 0);
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      long long c = next.fetch_add(1);
      if (c >= chunks || failed.load()) return;
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(c));
      long long count = std::min(kChunk, samples - c * kChunk);
      try {
        results[static_cast<size_t>(c)] = chunk_fn(rng, count);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        failed = true;
        error = e.what();
        return;
      }
    }
  };
  int nthreads = static_cast<int>(std::min<long long>(std::max(threads, 1), chunks));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw Error("Monte-Carlo worker failed: " + error);
  long long total = 0;
  for (long long r : results) total += r;
  return total;
}

std::uint64_t below_u64(Rng& rng, std::uint64_t bound) {
  // Unbiased rejection sampling over 64-bit draws.
  std::uint64_t limit = bound * ((~0ULL) / bound);
  for (;;) {
    std::uint64_t x = rng.next_u64();
    if (x < limit) return x % bound;
  }
}

int pattern_scale(double p, int n) {
  double x = p * std::log2(static_cast<double>(n));
  int m = static_cast<int>(std::ceil(x));
  return std::max(m, 0);
}

}  // namespace

TrendReport monkey_words(const std::vector<std::string>& alphabet,
                         const std::function<Word(int)>& pattern_family,
                         const std::vector<int>& sizes, long long samples, std::uint64_t seed,
                         double p, int threads) {
  if (alphabet.empty()) throw DomainError("empty alphabet");
  if (samples < 1) throw DomainError("samples must be at least 1");
  TrendReport report;
  for (int n : sizes) {
    if (n < 0) throw DomainError("negative word size");
    int m = pattern_scale(p, std::max(n, 1));
    Word pattern = pattern_family(m);
    long long contains = run_chunks(samples, seed, threads, [&](Rng& rng, long long count) {
      long long hits = 0;
      Word w(static_cast<size_t>(n));
      for (long long i = 0; i < count; ++i) {
        for (int j = 0; j < n; ++j)
          w[static_cast<size_t>(j)] =
              alphabet[static_cast<size_t>(below_u64(rng, alphabet.size()))];
        if (find_subword(w, pattern)) ++hits;
      }
      return hits;
    });
    TrendRow row;
    row.n = n;
    row.m = m;
    row.pattern_size = static_cast<int>(pattern.size());
    row.samples = samples;
    row.contains = contains;
    row.frequency = static_cast<double>(contains) / static_cast<double>(samples);
    WilsonInterval wi = wilson_interval(contains, samples);
    row.wilson_lo = wi.lo;
    row.wilson_hi = wi.hi;
    row.seed = seed;
    report.rows.push_back(row);
  }
  return report;
}

ContainmentResult containment_mc(const CountTable& table, const std::string& nt, int n,
                                 const Context& pattern, long long samples, std::uint64_t seed,
                                 int threads) {
  if (table.tree_count(nt, n) == 0)
    throw EmptySliceError("L_" + std::to_string(n) + "(" + nt + ") is empty");
  long long contains = run_chunks(samples, seed, threads, [&](Rng& rng, long long count) {
    long long hits = 0;
    for (long long i = 0; i < count; ++i) {
      Tree t = table.sample_uniform(nt, n, rng);
      if (is_subcontext(pattern, t)) ++hits;
    }
    return hits;
  });
  ContainmentResult r;
  r.contains = contains;
  r.samples = samples;
  r.frequency = static_cast<double>(contains) / static_cast<double>(samples);
  r.exact = false;
  return r;
}

ContainmentResult containment_exact(const Grammar& g, const std::string& nt, int n,
                                    const Context& pattern, long long budget) {
  Enumerator e(g, budget);
  const std::set<Tree>& lang = e.trees(nt, n);
  if (lang.empty())
    throw EmptySliceError("L_" + std::to_string(n) + "(" + nt + ") is empty");
  ContainmentResult r;
  r.samples = static_cast<long long>(lang.size());
  for (const Tree& t : lang)
    if (is_subcontext(pattern, t)) ++r.contains;
  r.frequency = static_cast<double>(r.contains) / static_cast<double>(r.samples);
  r.exact = true;
  return r;
}

TrendReport run_main_experiment(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw DomainError("samples must be at least 1");
  for (size_t i = 1; i < cfg.sizes.size(); ++i)
    if (cfg.sizes[i] <= cfg.sizes[i - 1]) throw DomainError("sizes must be ascending");
  if (cfg.sizes.empty()) throw DomainError("no sizes given");
  if (cfg.p <= 0) throw DomainError("p must be positive");

  TrendReport report;
  if (!(cfg.order_bound >= cfg.k && cfg.arity_bound >= cfg.k && cfg.var_bound >= 2))
    report.warnings.push_back(
        "pattern not in language: explosive terms need order and arity bounds >= k and at "
        "least 2 variables");

  lambda::LambdaGrammar full =
      lambda::build_lambda_grammar(cfg.order_bound, cfg.arity_bound, cfg.var_bound);
  lambda::LambdaGrammar restricted = lambda::restrict_reachable(full);
  std::vector<std::string> closed = restricted.closed_nonterminals();
  if (closed.empty()) throw DomainError("grammar has no closed-type nonterminals");

  int max_n = cfg.sizes.back();
  CountTable table(restricted.grammar, max_n);

  for (int n : cfg.sizes) {
    int m = std::max(1, pattern_scale(cfg.p, n));
    lambda::LambdaTerm pattern_term = lambda::explosive(m, cfg.k);
    Tree pattern = lambda::rename_canonical(pattern_term, std::max(2, cfg.var_bound));

    TrendRow row;
    row.n = n;
    row.m = m;
    row.pattern_size = pattern.size();
    row.seed = cfg.seed;

    mpz_class total = 0;
    for (const std::string& nt : closed) total += table.tree_count(nt, n);
    if (total == 0) {
      // Empty slice: record the row with zero samples and move on.
      row.samples = 0;
      report.rows.push_back(row);
      continue;
    }

    long long contains =
        run_chunks(cfg.samples, cfg.seed, cfg.threads, [&](Rng& rng, long long count) {
          long long hits = 0;
          for (long long i = 0; i < count; ++i) {
            mpz_class u = rng.below(total);
            size_t pick = 0;
            while (u >= table.tree_count(closed[pick], n)) {
              u -= table.tree_count(closed[pick], n);
              ++pick;
            }
            Tree t = table.sample_uniform(closed[pick], n, rng);
            if (is_subcontext(pattern, t)) ++hits;
          }
          return hits;
        });

    row.samples = cfg.samples;
    row.contains = contains;
    row.frequency = static_cast<double>(contains) / static_cast<double>(cfg.samples);
    WilsonInterval wi = wilson_interval(contains, cfg.samples);
    row.wilson_lo = wi.lo;
    row.wilson_hi = wi.hi;
    report.rows.push_back(row);
  }

  if (!cfg.csv_path.empty()) {
    std::ofstream out(cfg.csv_path, std::ios::binary);
    if (!out) throw Error("cannot write " + cfg.csv_path);
    out << report.csv();
  }
  return report;
}

}  // namespace treelab
