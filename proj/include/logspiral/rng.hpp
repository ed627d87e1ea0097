#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "logspiral/model.hpp"

namespace logspiral {

/// Deterministic uniform generator: fixed mt19937_64 stream with an explicit
/// 53-bit mapping, so identical seeds give identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Ordered offsets in (0, 2*pi) with pairwise (and from 0) separation >= gap.
  Angles ordered_angles(int M, double gap = 1e-3) {
    RVec theta(static_cast<std::size_t>(M) - 1);
    for (;;) {
      for (auto& t : theta) t = uniform(gap, 2.0 * kPi - gap);
      std::sort(theta.begin(), theta.end());
      double prev = 0.0;
      bool ok = true;
      for (double t : theta) {
        if (t - prev < gap) {
          ok = false;
          break;
        }
        prev = t;
      }
      if (ok) return Angles(theta);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace logspiral
