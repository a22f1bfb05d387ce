#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace projconst {

// Deterministic random helpers. std::mt19937_64 is bit-exact across platforms;
// the distributions below are hand-rolled because the standard library ones are
// implementation-defined, and certificate records must be reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  bool coin() { return (engine_() & 1u) != 0; }

  // Flat Dirichlet sample: normalized Exp(1) draws, strictly interior.
  std::vector<double> dirichlet(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& wi : w) {
      double u;
      do {
        u = uniform();
      } while (u <= 0.0);
      wi = -std::log(u);
      total += wi;
    }
    for (auto& wi : w) wi /= total;
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace projconst
