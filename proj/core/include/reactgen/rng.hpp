#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace reactgen {

// Deterministic RNG used everywhere in the project. Wraps a splitmix64-seeded
// xoshiro-style generator and hand-rolled distributions so that streams are
// reproducible bit-for-bit across runs and platforms (std:: distributions are
// implementation defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) { reseed(seed); }

  void reseed(uint64_t seed);

  uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, n).
  int64_t uniform_int(int64_t n);
  // Standard normal via Box-Muller (cached second draw).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (int64_t i = static_cast<int64_t>(xs.size()) - 1; i > 0; --i) {
      int64_t j = uniform_int(i + 1);
      std::swap(xs[static_cast<size_t>(i)], xs[static_cast<size_t>(j)]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<size_t>(uniform_int(static_cast<int64_t>(xs.size())))];
  }

 private:
  uint64_t s_[4];
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Stable 64-bit hash (FNV-1a) used to derive independent named substreams
// from one global seed: Rng(derive_seed(global, "synth")).
uint64_t hash64(const std::string& name);
uint64_t derive_seed(uint64_t base, const std::string& stream_name);
uint64_t derive_seed(uint64_t base, const std::string& stream_name, uint64_t index);

}  // namespace reactgen
