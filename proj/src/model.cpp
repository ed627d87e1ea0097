#include "logspiral/model.hpp"

#include <cmath>

namespace logspiral {

Complex mobius_A(double a) {
  if (!std::isfinite(a) || a <= 0.0) throw DomainError("mobius_A: a must be finite and > 0");
  return Complex(0.0, -2.0 * a) / Complex(a, 1.0);
}

ScalarPack scalar_pack(double a, const Angles& angles) {
  const Complex A = mobius_A(a);
  ScalarPack p;
  p.r = std::exp(-A * kPi);
  p.rk.resize(angles.size() + 1);
  p.rk[0] = Complex(1.0, 0.0);  // theta_0 = 0
  for (std::size_t k = 1; k < p.rk.size(); ++k)
    p.rk[k] = std::exp(-A * angles.at(static_cast<int>(k)));
  p.c = (p.r + 1.0 / p.r) / 2.0;
  p.s = (p.r - 1.0 / p.r) / 2.0;
  require_finite(p.rk, "scalar_pack");
  if (!is_finite(p.r) || !is_finite(p.c) || !is_finite(p.s))
    throw DomainError("scalar_pack: non-finite scalar");
  return p;
}

Angles reference_angles(const SpiralConfig& cfg) {
  if (cfg.M < 2) throw DomainError("reference_angles: M must be >= 2 (no offsets for M = 1)");
  RVec theta(static_cast<std::size_t>(cfg.M) - 1);
  for (int k = 1; k < cfg.M; ++k)
    theta[static_cast<std::size_t>(k) - 1] = static_cast<double>(k) * cfg.n * kPi / cfg.M;
  return Angles(std::move(theta));
}

}  // namespace logspiral
