#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace comp2flex {

// SplitMix64 step, used to mix seeds for derived streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG stream. All randomness in the library flows through
// this wrapper so results are reproducible bit-for-bit for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    return static_cast<int>(static_cast<std::uint64_t>(n) * uniform01());
  }

  // Exp(1) sample.
  double exp1() { return -std::log1p(-uniform01()); }

  bool bernoulli(double p) { return uniform01() < p; }

  int poisson(double mean) {
    std::poisson_distribution<int> d(mean);
    return d(eng_);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Purpose tags for the per-drop substreams. Keeping geometry, pairing,
// traffic, scheduling and fading on separate streams lets matched-seed runs
// share deployments while downstream choices differ.
enum class Stream : std::uint64_t {
  Geometry = 0,
  Pairing = 1,
  Traffic = 2,
  Scheduling = 3,
  Fading = 4,
  Oracle = 5,
};

// Derive an independent stream for (master seed, drop index, purpose).
inline Rng derive_stream(std::uint64_t master, std::uint64_t drop, Stream purpose) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= (drop + 1) * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(s);
  s ^= (static_cast<std::uint64_t>(purpose) + 1) * 0xd1b54a32d192ed03ULL;
  std::uint64_t c = splitmix64(s);
  return Rng(a ^ (b * 0x2545f4914f6cdd1dULL) ^ c);
}

}  // namespace comp2flex
