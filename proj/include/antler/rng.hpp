#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace antler {

// Deterministic randomness helper. All randomness in the library flows
// through this wrapper around std::mt19937_64, whose output sequence is
// fixed by the standard, so runs are reproducible bit-for-bit across
// platforms for a given 64-bit seed. Distribution helpers are hand-rolled
// because std::uniform_int_distribution is not portable across standard
// library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform value in [0, bound) via rejection sampling; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  int range(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace antler
