#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qss {

// splitmix64 finalizer. Used to derive independent per-cell seeds for
// parameter sweeps: cell_seed = mix_seed(master_seed, row_index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source for one session. Every random decision of a
// session (state choice, channel noise, measurement outcomes, ...) is drawn
// from a single instance in a fixed order, so one seed pins the whole run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution. Derived from raw engine words
  // instead of std::uniform_real_distribution so that the stream is
  // identical across standard library implementations.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n). Rejection sampling avoids modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    std::uint64_t x = engine_();
    while (rem != 0 && x > max - rem) x = engine_();
    return x % n;
  }

  // Sample an index from a probability vector. Probabilities are assumed to
  // sum to ~1; rounding residue is absorbed by the last entry.
  int sample_discrete(const double* probs, int count) {
    const double u = uniform();
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return count - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qss
