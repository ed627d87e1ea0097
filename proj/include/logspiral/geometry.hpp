#pragma once

#include <vector>

#include "logspiral/model.hpp"
#include "logspiral/types.hpp"

namespace logspiral {

/// One exported point of a spiral branch.
struct SpiralSample {
  int m;
  double theta;
  double t;
  Complex z;             // t^mu e^{a(theta - theta_m)} e^{i theta}
  double gamma_cum;      // circulation g_m t^{2mu-1} e^{2a(theta - theta_m)}
  double gamma_density;  // 2 a g_m t^{mu-1} e^{a(theta - theta_m)} / sqrt(1+a^2)
};

/// Uniform parameter sweep of branch m at time t.
std::vector<SpiralSample> sample_spiral(const SpiralFamily& family, int m, double t,
                                        double theta_lo, double theta_hi, int npoints);

/// Default export range [theta_m - 6 pi ln(10)/a, theta_m + 2 pi turns]: several
/// decades of radius inward plus the requested outward turns.
void default_theta_range(const SpiralFamily& family, int m, double turns, double& lo, double& hi);

/// Minimal j with a(2 pi j + theta_k - theta) + ln r > 0, computed by floor
/// arithmetic then verified against the defining inequality on both sides.
long winding_number(double r, double theta, double theta_k, double a);

struct ProfileValue {
  Complex w;
  bool near_sheet;      // min relative radial distance below the exclusion
  double min_rel_dist;  // min over branches/turns of |ln r - a(theta + 2 pi j - theta_k)|
};

/// Self-similar velocity profile w(z) off the sheet; the time-t field is
/// v(z,t) = t^{mu-1} w(z / t^mu).
ProfileValue velocity_profile(const SpiralFamily& family, Complex z, double exclusion = 1e-8);

/// v(z,t) evaluated through the profile.
Complex velocity_at(const SpiralFamily& family, Complex z, double t);

}  // namespace logspiral
