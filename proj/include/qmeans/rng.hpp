#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace qmeans {

// Seed derivation uses SplitMix64 (Steele et al., "Fast splittable
// pseudorandom number generators"). Child streams never overlap the parent
// stream, so one user-facing seed can fan out into per-trial / per-record
// seeds without correlation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for logical stream `stream` of `master`. Two SplitMix64 steps:
// one to decorrelate the master, one to mix the stream index in.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (stream * 0x9e3779b97f4a7c15ULL);
  return splitmix64(s);
}

// FNV-1a, used to turn structured record labels ("coreset/m=10/rep=3") into
// stream indices for derive_seed.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions are hand-rolled
// because std::*_distribution output is implementation-defined and would
// break cross-platform reproducibility of seeded runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (cosine branch). Exactly two engine draws
  // per call, which keeps downstream draw positions reproducible.
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]; keeps log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Uniform index in [0, n) by masked rejection (no modulo bias).
  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = engine_() & mask;
      if (v < n) return static_cast<std::size_t>(v);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Inclusive prefix sums of `weights`, for repeated discrete sampling.
inline std::vector<double> build_cumulative(std::span<const double> weights) {
  std::vector<double> cum(weights.size());
  double run = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    run += weights[i];
    cum[i] = run;
  }
  return cum;
}

// Index i with probability weights[i]/total, via binary search over the
// prefix sums. A degenerate total falls back to a uniform index.
inline std::size_t sample_from_cumulative(std::span<const double> cum,
                                          Rng& rng) {
  if (cum.empty())
    throw std::invalid_argument("sample_from_cumulative: empty support");
  double total = cum.back();
  if (!(total > 0.0)) return rng.index(cum.size());
  double u = rng.uniform() * total;
  std::size_t lo = 0, hi = cum.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (cum[mid] > u)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace qmeans
