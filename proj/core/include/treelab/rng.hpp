#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace treelab {

/// splitmix64 step, used to derive per-worker stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic 64-bit-seeded generator. The family is pinned to
/// std::mt19937_64, which the standard specifies bit-exactly, so identical
/// seeds reproduce identical draws on any platform. Worker stream i uses
/// seed ^ splitmix64(i).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t worker) {
    return Rng(seed ^ splitmix64(worker));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound), bound > 0, by rejection over whole
  /// 64-bit chunks with the top chunk masked to the bound's bit length.
  mpz_class below(const mpz_class& bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace treelab
