#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kfield {

// Seeded generator with a fixed mapping from raw 64-bit draws to doubles,
// so that reports produced from the same seed are byte-identical across
// standard library implementations (std::uniform_real_distribution is not
// specified tightly enough for that).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double unit() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::uint64_t raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace kfield
