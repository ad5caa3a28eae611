#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace uht {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for an independent stream derived from a master seed. Replicas of a
// Monte-Carlo run each get their own stream so aggregation order never
// changes the result.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

// mt19937_64 engine (algorithm fixed by the standard) with hand-rolled
// draws, so sequences are identical across platforms and stdlib versions.
class Rng {
public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  double log_normal(double log_mean, double log_sigma) {
    return std::exp(log_mean + log_sigma * normal());
  }

  // Inverse-CDF draw from a probability row.
  int pick(std::span<const double> probs) {
    double u = uniform01();
    double cum = 0.0;
    for (size_t i = 0; i + 1 < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  uint64_t raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace uht
