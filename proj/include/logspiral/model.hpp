#pragma once

#include <cstddef>

#include "logspiral/types.hpp"

namespace logspiral {

/// A problem instance: M spiral branches, reference-angle family index n.
/// The reference first angle is theta_1 = n*pi/M.
struct SpiralConfig {
  int M = 2;
  int n = 1;

  SpiralConfig() = default;
  SpiralConfig(int M_, int n_) : M(M_), n(n_) {
    if (M < 1) throw DomainError("SpiralConfig: M must be >= 1");
    if (n < 1) throw DomainError("SpiralConfig: n must be >= 1");
  }
};

/// Ordered offset angles (theta_1, ..., theta_{M-1}); theta_0 = 0 is implicit.
/// Strict ordering 0 < theta_1 < ... < theta_{M-1} is enforced; membership in
/// the physical box (0, 2*pi)^{M-1} is only reported, never enforced.
class Angles {
 public:
  Angles() = default;  // M = 1, no offset angles

  explicit Angles(RVec theta) : theta_(std::move(theta)) {
    require_finite(theta_, "Angles");
    double prev = 0.0;
    for (double t : theta_) {
      if (!(t > prev)) throw OrderingViolated("Angles: offsets must satisfy 0 < theta_1 < ... < theta_{M-1}");
      prev = t;
    }
  }

  /// Number of branches M = (#offsets) + 1.
  int branches() const { return static_cast<int>(theta_.size()) + 1; }
  std::size_t size() const { return theta_.size(); }
  bool empty() const { return theta_.empty(); }

  /// theta_k for k = 0..M-1 (theta_0 = 0).
  double at(int k) const { return k == 0 ? 0.0 : theta_[static_cast<std::size_t>(k) - 1]; }
  /// Offsets theta_1..theta_{M-1}.
  const RVec& values() const { return theta_; }

  /// True when every offset lies in (0, 2*pi).
  bool in_U() const {
    for (double t : theta_)
      if (!(t > 0.0 && t < 2.0 * kPi)) return false;
    return true;
  }

  static constexpr double kPi = 3.141592653589793238462643383279502884;

 private:
  RVec theta_;
};

inline constexpr double kPi = Angles::kPi;

/// A full similarity solution: tightness a, exponent mu, angles, weights
/// g_0..g_{M-1}, plus diagnostics.
struct SpiralFamily {
  double a = 0.0;
  double mu = 0.0;
  Angles angles;
  RVec g;
  double residual = 0.0;  // max modulus of the per-branch defect
  bool in_U = true;
};

/// Moebius factor A(a) = -2ai/(a+i); A -> -2i as a -> infinity.
Complex mobius_A(double a);

/// The exponential scalars shared by the system matrices: r = e^{-A pi},
/// r_k = e^{-A theta_{k-1}} for k = 1..M (so rk[0] = 1), c = cosh(pi A),
/// s = (r - 1/r)/2 = -sinh(pi A).
struct ScalarPack {
  Complex r;
  CVec rk;
  Complex c;
  Complex s;
};

ScalarPack scalar_pack(double a, const Angles& angles);

/// Reference offsets theta_k = k*n*pi/M, k = 1..M-1. Requires M >= 2.
Angles reference_angles(const SpiralConfig& cfg);

}  // namespace logspiral
