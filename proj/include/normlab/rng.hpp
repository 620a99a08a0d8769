#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace normlab {

// Seeded PRNG wrapper. Uniform doubles are produced from raw 64-bit draws
// ((x >> 11) * 2^-53) instead of std::uniform_real_distribution, so streams
// are identical across standard library implementations. Every report that
// used randomness records the seed and this generator's name.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  static constexpr const char* name() { return "mt19937_64"; }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return gen_(); }

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform sign in {-1, +1}.
  double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }

  double normal() {
    // Box-Muller, one value per call pair.
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(6.283185307179586477 * u2);
    have_spare_ = true;
    return r * std::cos(6.283185307179586477 * u2);
  }

  // Independent child stream (splitmix64 of seed and stream id).
  SeededRng fork(std::uint64_t stream) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return SeededRng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace normlab
