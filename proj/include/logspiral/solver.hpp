#pragma once

#include <string>
#include <vector>

#include "logspiral/model.hpp"
#include "logspiral/types.hpp"

namespace logspiral {

struct NewtonSettings {
  double tol = 1e-12;     // residual tolerance on ||Im H||_inf
  int max_iter = 50;
  double fd_step = 1e-7;  // step for Jacobian cross-checks
  double damping = 1.0;   // initial step scale; halved on residual increase, min 2^-10
};

/// Root function F(a, Theta) = Im H(a, Theta).
RVec F_of(double a, const Angles& angles);

/// Term-wise analytic Jacobian of F with respect to the offset angles.
RMat analytic_jacobian(double a, const Angles& angles);

/// Central-difference Jacobian of F (cross-check oracle for the analytic one).
RMat fd_jacobian(double a, const Angles& angles, double step = 1e-7);

/// Damped Newton iteration for F(a, .) = 0 from the given initial angles.
/// After reaching tol, up to three undamped polish steps keep the best iterate.
Angles newton_theta(double a, const Angles& init, const NewtonSettings& settings = {});

struct BranchSample {
  double a;
  Angles theta;
  RVec gprime;      // g_1/g_0 .. g_{M-1}/g_0
  double g0;
  double mu;
  double residual;  // ||Im H||_inf at theta
  bool in_U;
};

/// A sampled continuation curve a -> (Theta(a), g(a), mu(a)), decreasing in a.
struct Branch {
  SpiralConfig cfg;
  std::vector<BranchSample> samples;
  RVec theta_minus1;      // first-order coefficient of Theta(a) - Theta_ref
  RVec g_minus1;          // first-order coefficient of G(a, Theta(a)) - 1
  bool theta_minus1_fd = false;  // true when the M = 2 difference oracle was used
  bool complete = true;
  std::string stop_reason;       // set when the branch stopped early
};

/// Predictor-corrector continuation on a geometric grid from a_start down to
/// a_end. First predictor is Theta_ref + theta_minus1/a, later ones reuse the
/// previous corrected point. Stops early (flagged, partial data kept) when
/// Newton fails, ordering breaks, a weight ratio falls below 1e-8, or the
/// 2x2 weight/exponent system degenerates.
Branch continue_branch(const SpiralConfig& cfg, double a_start, double a_end, int steps,
                       const NewtonSettings& settings = {});

/// theta_minus1 solves gradF * x = -Im(R+iI) at the reference angles; odd M
/// uses the closed-form gradient, M = 2 a central-difference limit oracle.
RVec theta_minus1(const SpiralConfig& cfg);
RVec G_minus1(const SpiralConfig& cfg);

struct EPair {
  Complex E1;
  Complex E2;
  double det2;
  double g0;
  double mu;
};

/// Recover (g_0, mu) from the first equation of the discrete system:
/// -(1+a^2)/(2a) K = g0 E1 + mu E2, split into real and imaginary parts.
EPair solve_g0_mu(double a, const Angles& angles, const RVec& gprime);

/// E1 evaluated from its defining sum (exponent-combined terms, compensated
/// accumulation). Equals a*cosh(pi A) identically for odd M.
Complex E1_sum(double a, const Angles& angles);

struct E2Expansion {
  double E20;
  Complex E2m1;
};

/// Leading coefficients of E2(a) = E20 + E2m1/a + o(1/a) along the branch
/// through the reference angles. Odd M >= 3.
E2Expansion e2_expansion(const SpiralConfig& cfg);

struct PrandtlSolution {
  double g;
  double mu;
  double residual;
};

/// Single-branch (M = 1) case: -2 a^2 g coth(pi A) = a^2 + 1 - 2 mu + 2 a mu i.
PrandtlSolution prandtl_solve(double a);

/// Per-branch defect moduli of the discrete system for an assembled family.
/// Uses compensated dot products so cancellation does not mask the true defect.
RVec residual_eq_disc(const SpiralFamily& family);

/// Assemble a SpiralFamily from a branch sample (weights g_k = g0 * gprime_k,
/// residual recomputed from the full system).
SpiralFamily make_family(const SpiralConfig& cfg, const BranchSample& sample);

struct Nontriviality {
  CVec row_direct;
  CVec row_closed;
  double max_rel_diff;
  double min_pairwise_gap;
};

/// Row sums of the full matrix at the n = 1 reference angles with uniform
/// weights, evaluated directly and by geometric-series closed form. Distinct
/// values across rows rule out a uniform-weight solution there.
Nontriviality nontriviality_check(int M, double a);

/// Central-difference oracle for lim -a^2 dH/da at fixed angles.
CVec RI_fd(const Angles& angles, double a, double rel_step = 1e-3);

}  // namespace logspiral
