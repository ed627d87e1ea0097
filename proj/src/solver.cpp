#include "logspiral/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "logspiral/asymptotics.hpp"
#include "logspiral/linalg.hpp"
#include "logspiral/matrices.hpp"

namespace logspiral {

namespace {

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double inf_norm(const RVec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool strictly_ordered(const RVec& theta) {
  double prev = 0.0;
  for (double t : theta) {
    if (!(t > prev)) return false;
    prev = t;
  }
  return true;
}

// dK/dtheta_j and dH_l/dtheta_j, term-wise from the defining sums.
Complex dK_dtheta(double a, const Angles& th, int j) {
  const int M = th.branches();
  const Complex A = mobius_A(a);
  return parity(M) * parity(j) * A * std::exp(A * (th.at(j) - kPi));
}

Complex dH_dtheta(double a, const Angles& th, int l, int j) {
  const int M = th.branches();
  const Complex A = mobius_A(a);
  const double tl = th.at(l);
  if (j < l) return parity(l + j) * A * std::exp(A * (th.at(j) - tl + kPi));
  if (j > l) return parity(M) * parity(l + j) * A * std::exp(A * (th.at(j) - tl - kPi));
  Complex s{};
  for (int k = 0; k < l; ++k) s += parity(l + k) * std::exp(A * (th.at(k) - tl + kPi));
  for (int k = l + 1; k < M; ++k)
    s += parity(M) * parity(l + k) * std::exp(A * (th.at(k) - tl - kPi));
  return -A * s;
}

struct Coeffs2x2 {
  double a11, a12, a21, a22;
};

// Cramer solve of a 2x2 real system followed by one compensated-residual
// refinement step; keeps the plugged-back defect at the rounding floor.
void solve2x2_refined(const Coeffs2x2& m, double b1, double b2, double& x1, double& x2) {
  const double det = m.a11 * m.a22 - m.a12 * m.a21;
  x1 = (b1 * m.a22 - m.a12 * b2) / det;
  x2 = (m.a11 * b2 - b1 * m.a21) / det;
  KahanSum r1, r2;
  r1.add_product(m.a11, x1);
  r1.add_product(m.a12, x2);
  r1.add(-b1);
  r2.add_product(m.a21, x1);
  r2.add_product(m.a22, x2);
  r2.add(-b2);
  const double e1 = -r1.value(), e2 = -r2.value();
  x1 += (e1 * m.a22 - m.a12 * e2) / det;
  x2 += (m.a11 * e2 - e1 * m.a21) / det;
}

// Both expansion coefficients share the R+iI vector and gradients.
struct RefExpansion {
  RVec theta_minus1;
  RVec g_minus1;
  bool fd = false;
};

RefExpansion ref_expansion(const SpiralConfig& cfg) {
  RefExpansion out;
  const Angles ref = reference_angles(cfg);
  if (cfg.M == 2) {
    const CVec ri = RI_fd(ref, 1e6);
    const RMat gf = gradF_general(ref);
    const RMat gg = gradG_general(ref);
    RVec I(1, ri[0].imag());
    out.theta_minus1 = lu_solve(gf, {-I[0]});
    out.g_minus1 = {ri[0].real() + gg(0, 0) * out.theta_minus1[0]};
    out.fd = true;
    return out;
  }
  if (cfg.M % 2 == 0) throw NondegeneracyFailure("ref_expansion: even M >= 4 unsupported");
  const DerivativeLimits dl = derivative_limits(ref);
  if (!dl.has_RI) throw NondegeneracyFailure("ref_expansion: reference angles inadmissible");
  const GradPair g = grad_bar(cfg);
  RVec negI(dl.RI.size());
  for (std::size_t i = 0; i < dl.RI.size(); ++i) negI[i] = -dl.RI[i].imag();
  try {
    out.theta_minus1 = lu_solve(g.F, negI);
  } catch (const DegenerateJacobian&) {
    throw NondegeneracyFailure("ref_expansion: limiting gradient is singular");
  }
  const RVec correction = g.G * out.theta_minus1;
  out.g_minus1.resize(dl.RI.size());
  for (std::size_t i = 0; i < dl.RI.size(); ++i)
    out.g_minus1[i] = dl.RI[i].real() + correction[i];
  return out;
}

}  // namespace

RVec F_of(double a, const Angles& angles) {
  const CVec H = solve_gprime(a, angles);
  RVec F(H.size());
  for (std::size_t i = 0; i < H.size(); ++i) F[i] = H[i].imag();
  return F;
}

RMat analytic_jacobian(double a, const Angles& angles) {
  const int M = angles.branches();
  const Complex K = K_closed(a, angles);
  if (std::abs(K) <= kDegTol) throw DegenerateSystem("analytic_jacobian: denominator ~ 0");
  const std::size_t dim = angles.size();
  RMat J(dim, dim);
  for (int l = 1; l < M; ++l) {
    const Complex Hl = H_closed(a, angles, l);
    for (int j = 1; j < M; ++j) {
      const Complex dH = dH_dtheta(a, angles, l, j);
      const Complex dK = dK_dtheta(a, angles, j);
      J(l - 1, j - 1) = ((dH * K - Hl * dK) / (K * K)).imag();
    }
  }
  return J;
}

RMat fd_jacobian(double a, const Angles& angles, double step) {
  const std::size_t dim = angles.size();
  RMat J(dim, dim);
  RVec base = angles.values();
  for (std::size_t j = 0; j < dim; ++j) {
    RVec up = base, dn = base;
    up[j] += step;
    dn[j] -= step;
    const RVec Fp = F_of(a, Angles(up)), Fm = F_of(a, Angles(dn));
    for (std::size_t i = 0; i < dim; ++i) J(i, j) = (Fp[i] - Fm[i]) / (2.0 * step);
  }
  return J;
}

Angles newton_theta(double a, const Angles& init, const NewtonSettings& settings) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("newton_theta: a must be positive");
  if (settings.tol <= 0.0 || settings.max_iter < 1)
    throw DomainError("newton_theta: invalid settings");
  RVec th = init.values();
  bool converged = false;
  RVec F = F_of(a, init);
  double res = inf_norm(F);
  for (int iter = 0; iter < settings.max_iter; ++iter) {
    if (res <= settings.tol) {
      converged = true;
      break;
    }
    const RMat J = analytic_jacobian(a, Angles(th));
    RVec rhs(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
    const RVec step = lu_solve(J, rhs);
    double lam = settings.damping;
    bool accepted = false;
    bool any_ordered = false;
    while (lam >= std::ldexp(1.0, -10)) {
      RVec cand(th.size());
      for (std::size_t i = 0; i < th.size(); ++i) cand[i] = th[i] + lam * step[i];
      if (strictly_ordered(cand)) {
        any_ordered = true;
        const RVec Fc = F_of(a, Angles(cand));
        const double rc = inf_norm(Fc);
        if (rc < res) {
          th = std::move(cand);
          F = Fc;
          res = rc;
          accepted = true;
          break;
        }
      }
      lam *= 0.5;
    }
    if (!accepted) {
      if (!any_ordered) throw OrderingViolated("newton_theta: step leaves the ordered cone");
      throw NoConvergence("newton_theta: damped line search stalled");
    }
  }
  if (!converged && res > settings.tol)
    throw NoConvergence("newton_theta: iteration cap reached");
  // Polish: a few undamped steps while the residual strictly improves.
  for (int extra = 0; extra < 3; ++extra) {
    RMat J;
    try {
      J = analytic_jacobian(a, Angles(th));
    } catch (const Error&) {
      break;
    }
    RVec rhs(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
    RVec step;
    try {
      step = lu_solve(J, rhs);
    } catch (const Error&) {
      break;
    }
    RVec cand(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) cand[i] = th[i] + step[i];
    if (!strictly_ordered(cand)) break;
    const RVec Fc = F_of(a, Angles(cand));
    if (inf_norm(Fc) >= res) break;
    th = std::move(cand);
    F = Fc;
    res = inf_norm(F);
  }
  return Angles(th);
}

RVec theta_minus1(const SpiralConfig& cfg) { return ref_expansion(cfg).theta_minus1; }

RVec G_minus1(const SpiralConfig& cfg) { return ref_expansion(cfg).g_minus1; }

Branch continue_branch(const SpiralConfig& cfg, double a_start, double a_end, int steps,
                       const NewtonSettings& settings) {
  if (cfg.M < 2) throw DomainError("continue_branch: M must be >= 2 (use prandtl_solve for M = 1)");
  if (!(a_start >= a_end) || !(a_end > 0.0))
    throw DomainError("continue_branch: need a_start >= a_end > 0");
  if (steps < 1) throw DomainError("continue_branch: steps must be >= 1");
  if (cfg.M >= 4 && cfg.M % 2 == 0)
    throw NondegeneracyFailure(
        "continue_branch: nondegeneracy matrix C is defined only for odd M; even M >= 4 has "
        "an inadmissible reference point");
  const Angles ref = reference_angles(cfg);
  if (!is_admissible(ref))
    throw NondegeneracyFailure("continue_branch: reference angles inadmissible");
  if (cfg.M >= 3) {
    const double smin = sigma_min(matrix_C(cfg));
    if (smin <= 1e-8)
      throw NondegeneracyFailure("continue_branch: nondegeneracy matrix C is numerically singular");
  }

  Branch branch;
  branch.cfg = cfg;
  const RefExpansion exp = ref_expansion(cfg);
  branch.theta_minus1 = exp.theta_minus1;
  branch.g_minus1 = exp.g_minus1;
  branch.theta_minus1_fd = exp.fd;

  RVec predictor = ref.values();
  bool have_prev = false;
  for (int i = 0; i < steps; ++i) {
    const double frac = (steps == 1) ? 0.0 : static_cast<double>(i) / (steps - 1);
    const double a = std::exp(std::log(a_start) + frac * (std::log(a_end) - std::log(a_start)));
    try {
      if (!have_prev) {
        predictor = ref.values();
        for (std::size_t k = 0; k < predictor.size(); ++k)
          predictor[k] += branch.theta_minus1[k] / a;
        if (!strictly_ordered(predictor)) predictor = ref.values();
      }
      const Angles theta = newton_theta(a, Angles(predictor), settings);
      const CVec H = solve_gprime(a, theta);
      BranchSample s;
      s.a = a;
      s.theta = theta;
      s.residual = 0.0;
      s.gprime.resize(H.size());
      for (std::size_t k = 0; k < H.size(); ++k) {
        s.gprime[k] = H[k].real();
        s.residual = std::max(s.residual, std::abs(H[k].imag()));
      }
      if (s.residual > 10.0 * settings.tol)
        throw NoConvergence("weights kept a nonreal part above tolerance");
      const EPair ep = solve_g0_mu(a, theta, s.gprime);
      s.g0 = ep.g0;
      s.mu = ep.mu;
      if (std::abs(s.g0) < 1e-8) throw NoSolution("weight g_0 collapsed below 1e-8");
      for (double gp : s.gprime)
        if (std::abs(s.g0 * gp) < 1e-8) throw NoSolution("a weight collapsed below 1e-8");
      s.in_U = theta.in_U();
      branch.samples.push_back(std::move(s));
      predictor = theta.values();
      have_prev = true;
    } catch (const Error& e) {
      std::ostringstream os;
      os << e.what() << " (at a = " << a << ")";
      branch.complete = false;
      branch.stop_reason = os.str();
      break;
    }
  }
  return branch;
}

Complex E1_sum(double a, const Angles& angles) {
  const int M = angles.branches();
  const Complex A = mobius_A(a);
  const double sM = parity(M);
  const Complex ch = std::cosh(kPi * A);
  const Complex sh = std::sinh(kPi * A);
  // cosh(pi A) K + sum_l H_l e^{A(theta_l - pi)}, with every product of
  // exponentials collapsed into a single exponent before evaluation.
  KahanSum re, im;
  auto acc = [&](const Complex& z) {
    re.add(z.real());
    im.add(z.imag());
  };
  acc(ch * (std::exp(kPi * A) + sM * std::exp(-kPi * A)) / 2.0);
  for (int k = 1; k < M; ++k)
    acc(ch * sM * parity(k) * std::exp(A * (angles.at(k) - kPi)));
  for (int l = 1; l < M; ++l) {
    const double tl = angles.at(l);
    acc((std::exp(A * tl) - sM * std::exp(A * (tl - 2.0 * kPi))) / 2.0);
    for (int k = 0; k < l; ++k) acc(parity(l + k) * std::exp(A * angles.at(k)));
    for (int k = l; k < M; ++k)
      acc(sM * parity(l + k) * std::exp(A * (angles.at(k) - 2.0 * kPi)));
  }
  return a / sh * Complex(re.value(), im.value());
}

EPair solve_g0_mu(double a, const Angles& angles, const RVec& gprime) {
  const int M = angles.branches();
  if (gprime.size() != angles.size()) throw DomainError("solve_g0_mu: gprime size mismatch");
  const Complex K = K_closed(a, angles);
  if (std::abs(K) <= kDegTol) throw DegenerateSystem("solve_g0_mu: denominator ~ 0");
  for (int l = 1; l < M; ++l) {
    const Complex Hl = H_closed(a, angles, l) / K;
    if (std::abs(Hl.imag()) > 1e-8)
      throw DomainError("solve_g0_mu: weights are not real at these angles");
    if (std::abs(Hl.real() - gprime[static_cast<std::size_t>(l) - 1]) > 1e-8)
      throw DomainError("solve_g0_mu: gprime inconsistent with the Cramer solution");
  }
  EPair ep;
  ep.E1 = E1_sum(a, angles);
  ep.E2 = (Complex(0.0, 1.0) - 1.0 / a) * K;
  const Complex w = -(1.0 + a * a) / (2.0 * a) * K;
  const Coeffs2x2 m{ep.E1.real(), ep.E2.real(), ep.E1.imag(), ep.E2.imag()};
  ep.det2 = m.a11 * m.a22 - m.a12 * m.a21;
  if (std::abs(ep.det2) <= kLiTol)
    throw LinearDependence("solve_g0_mu: E1 and E2 are numerically dependent");
  solve2x2_refined(m, w.real(), w.imag(), ep.g0, ep.mu);
  return ep;
}

E2Expansion e2_expansion(const SpiralConfig& cfg) {
  if (cfg.M < 3 || cfg.M % 2 == 0)
    throw DomainError("e2_expansion: supported only for odd M >= 3");
  const double t1 = cfg.n * kPi / cfg.M;
  const Complex denom =
      (1.0 + std::exp(Complex(0.0, -2.0 * t1))) * (1.0 + std::exp(Complex(0.0, 2.0 * t1)));
  E2Expansion out;
  out.E20 = (2.0 * std::sin(2.0 * t1) / denom).real();
  const Angles ref = reference_angles(cfg);
  const RVec tm1 = theta_minus1(cfg);
  const DerivativeLimits dl = derivative_limits(ref);
  Complex grad_dot{};
  for (int k = 1; k < cfg.M; ++k) {
    const Complex gk = Complex(0.0, 2.0) * parity(k) * std::exp(Complex(0.0, -2.0) * ref.at(k));
    grad_dot += gk * tm1[static_cast<std::size_t>(k) - 1];
  }
  out.E2m1 = -K_limit(ref) + Complex(0.0, 1.0) * dl.dK + Complex(0.0, 1.0) * grad_dot;
  return out;
}

PrandtlSolution prandtl_solve(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("prandtl_solve: a must be positive");
  const Complex A = mobius_A(a);
  const Complex coth = std::cosh(kPi * A) / std::sinh(kPi * A);
  // -2 a^2 g coth(pi A) - mu (-2 + 2 a i) = a^2 + 1, unknowns (g, mu) real.
  const Complex cg = -2.0 * a * a * coth;
  const Complex cmu(2.0, -2.0 * a);
  const Coeffs2x2 m{cg.real(), cmu.real(), cg.imag(), cmu.imag()};
  const double det = m.a11 * m.a22 - m.a12 * m.a21;
  if (!std::isfinite(det) || std::abs(det) <= kLiTol * (std::abs(cg) * std::abs(cmu)))
    throw NoSolution("prandtl_solve: 2x2 system is singular at this a");
  PrandtlSolution sol;
  solve2x2_refined(m, a * a + 1.0, 0.0, sol.g, sol.mu);
  const Complex lhs = -2.0 * a * a * sol.g * coth;
  const Complex rhs(a * a + 1.0 - 2.0 * sol.mu, 2.0 * a * sol.mu);
  sol.residual = std::abs(lhs - rhs);
  return sol;
}

RVec residual_eq_disc(const SpiralFamily& family) {
  const int M = family.angles.branches();
  if (family.g.size() != static_cast<std::size_t>(M))
    throw DomainError("residual_eq_disc: weight vector must have M entries");
  const Complex A = mobius_A(family.a);
  const Complex rho = -std::sinh(kPi * A) / (2.0 * family.a * family.a) *
                      (1.0 + family.a * family.a -
                       2.0 * family.mu * Complex(1.0, -family.a));
  const CMat Afull = build_A(family.a, family.angles);
  RVec out(static_cast<std::size_t>(M));
  CVec row(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    for (int k = 0; k < M; ++k) row[k] = Afull(m, k);
    out[m] = std::abs(compensated_row_defect(row, family.g, rho));
  }
  return out;
}

SpiralFamily make_family(const SpiralConfig& cfg, const BranchSample& sample) {
  SpiralFamily fam;
  fam.a = sample.a;
  fam.mu = sample.mu;
  fam.angles = sample.theta;
  fam.g.resize(static_cast<std::size_t>(cfg.M));
  fam.g[0] = sample.g0;
  for (std::size_t k = 0; k < sample.gprime.size(); ++k)
    fam.g[k + 1] = sample.g0 * sample.gprime[k];
  fam.in_U = sample.in_U;
  const RVec defects = residual_eq_disc(fam);
  fam.residual = *std::max_element(defects.begin(), defects.end());
  return fam;
}

Nontriviality nontriviality_check(int M, double a) {
  if (M < 2) throw DomainError("nontriviality_check: M must be >= 2");
  const SpiralConfig cfg(M, 1);
  const Angles ref = reference_angles(cfg);
  const CMat Afull = build_A(a, ref);
  Nontriviality out;
  out.row_direct.resize(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    Complex s{};
    for (int k = 0; k < M; ++k) s += Afull(m, k);
    out.row_direct[m] = s;
  }
  // Geometric-series closed form with x = e^{pi A / M}:
  //   sinh(pi A)(1+x)/(x-1) + x^{-m} (e^{pi A} - 1)/(1-x).
  const Complex A = mobius_A(a);
  const Complex x = std::exp(kPi * A / static_cast<double>(M));
  const Complex common = std::sinh(kPi * A) * (1.0 + x) / (x - 1.0);
  const Complex coeff = (std::exp(kPi * A) - 1.0) / (1.0 - x);
  out.row_closed.resize(static_cast<std::size_t>(M));
  out.max_rel_diff = 0.0;
  for (int m = 0; m < M; ++m) {
    out.row_closed[m] = common + std::pow(x, -static_cast<double>(m)) * coeff;
    out.max_rel_diff =
        std::max(out.max_rel_diff, std::abs(out.row_closed[m] - out.row_direct[m]) /
                                       std::abs(out.row_direct[m]));
  }
  out.min_pairwise_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j)
      out.min_pairwise_gap =
          std::min(out.min_pairwise_gap, std::abs(out.row_direct[i] - out.row_direct[j]));
  return out;
}

CVec RI_fd(const Angles& angles, double a, double rel_step) {
  const CVec hi = solve_gprime(a * (1.0 + rel_step), angles);
  const CVec lo = solve_gprime(a * (1.0 - rel_step), angles);
  CVec out(hi.size());
  for (std::size_t i = 0; i < hi.size(); ++i)
    out[i] = -a * (hi[i] - lo[i]) / (2.0 * rel_step);
  return out;
}

}  // namespace logspiral
