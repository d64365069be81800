#pragma once

#include <cstdint>
#include <random>

namespace tourney {

// Seeded stream with deterministic splitting. Each split() derives an
// independent child stream from the parent's seed and a child counter, so the
// stream tree is a pure function of the root seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [0, n), n >= 1.
  int below(int n) {
    std::uint64_t bound = static_cast<std::uint64_t>(n);
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  RngStream split() { return RngStream(mix(seed_ ^ mix(++children_))); }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t children_ = 0;
  std::mt19937_64 eng_;
};

}  // namespace tourney
