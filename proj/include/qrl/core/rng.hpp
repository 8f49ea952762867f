#pragma once

#include <cstdint>
#include <random>

namespace qrl {

// Seeded random stream. Every sampling operation in the library takes one of
// these explicitly; there is no global randomness. Substreams for parallel
// trials are derived with child(), which mixes the parent seed with the
// substream index so trial i is reproducible independently of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  bool bernoulli(double p) { return uniform() < p; }

  Rng child(std::uint64_t index) const {
    return Rng(splitmix(seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qrl
