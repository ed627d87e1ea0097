#include "logspiral/geometry.hpp"

#include <cmath>
#include <limits>

namespace logspiral {

std::vector<SpiralSample> sample_spiral(const SpiralFamily& family, int m, double t,
                                        double theta_lo, double theta_hi, int npoints) {
  const int M = family.angles.branches();
  if (m < 0 || m >= M) throw DomainError("sample_spiral: branch index out of range");
  if (!(t > 0.0)) throw DomainError("sample_spiral: t must be > 0");
  if (npoints < 2) throw DomainError("sample_spiral: need at least two points");
  if (!(theta_hi > theta_lo)) throw DomainError("sample_spiral: empty theta range");
  const double a = family.a;
  const double mu = family.mu;
  const double tm = family.angles.at(m);
  const double gm = family.g[static_cast<std::size_t>(m)];
  const double gamma_scale = 2.0 * a * gm * std::pow(t, mu - 1.0) / std::sqrt(1.0 + a * a);
  std::vector<SpiralSample> out;
  out.reserve(static_cast<std::size_t>(npoints));
  for (int i = 0; i < npoints; ++i) {
    const double theta = theta_lo + (theta_hi - theta_lo) * i / (npoints - 1);
    const double radial = std::exp(a * (theta - tm));
    SpiralSample s;
    s.m = m;
    s.theta = theta;
    s.t = t;
    s.z = std::pow(t, mu) * radial * std::exp(Complex(0.0, theta));
    s.gamma_cum = gm * std::pow(t, 2.0 * mu - 1.0) * radial * radial;
    s.gamma_density = gamma_scale * radial;
    out.push_back(s);
  }
  return out;
}

void default_theta_range(const SpiralFamily& family, int m, double turns, double& lo, double& hi) {
  const double tm = family.angles.at(m);
  lo = tm - 6.0 * kPi * std::log(10.0) / family.a;
  hi = tm + 2.0 * kPi * turns;
}

long winding_number(double r, double theta, double theta_k, double a) {
  if (!(r > 0.0)) throw DomainError("winding_number: r must be > 0");
  const double q = ((theta - theta_k) - std::log(r) / a) / (2.0 * kPi);
  long j = static_cast<long>(std::floor(q)) + 1;
  const auto holds = [&](long jj) {
    return a * (2.0 * kPi * static_cast<double>(jj) + theta_k - theta) + std::log(r) > 0.0;
  };
  while (!holds(j)) ++j;
  while (holds(j - 1)) --j;
  return j;
}

ProfileValue velocity_profile(const SpiralFamily& family, Complex z, double exclusion) {
  if (z == Complex{}) throw DomainError("velocity_profile: z must be nonzero");
  const double a = family.a;
  const Complex A = Complex(0.0, -2.0 * a) / Complex(a, 1.0);
  const double r = std::abs(z);
  const double theta = std::arg(z);
  const int M = family.angles.branches();
  const Complex geom_denom = 1.0 - std::exp(2.0 * kPi * A);
  const Complex radial_pow = std::pow(Complex(r, 0.0), 2.0 * a / Complex(a, 1.0));
  ProfileValue out;
  out.min_rel_dist = std::numeric_limits<double>::infinity();
  Complex sum{};
  for (int k = 0; k < M; ++k) {
    const double tk = family.angles.at(k);
    const long J = winding_number(r, theta, tk, a);
    const Complex term = radial_pow * std::exp(A * (tk - theta)) *
                         std::exp(2.0 * kPi * static_cast<double>(J) * A) / geom_denom;
    sum += 2.0 * a * family.g[static_cast<std::size_t>(k)] / (r * Complex(a, -1.0)) *
           std::conj(term);
    // radial log-gap to the nearest turn of branch k along this ray
    const double x = std::log(r) - a * (theta - tk);
    const double frac = x / (2.0 * kPi * a);
    const double gap = std::abs(x - 2.0 * kPi * a * std::round(frac));
    out.min_rel_dist = std::min(out.min_rel_dist, gap);
  }
  out.w = std::exp(Complex(0.0, theta)) * sum;
  out.near_sheet = out.min_rel_dist < exclusion;
  return out;
}

Complex velocity_at(const SpiralFamily& family, Complex z, double t) {
  if (!(t > 0.0)) throw DomainError("velocity_at: t must be > 0");
  const double scale = std::pow(t, family.mu);
  return std::pow(t, family.mu - 1.0) * velocity_profile(family, z / scale).w;
}

}  // namespace logspiral
