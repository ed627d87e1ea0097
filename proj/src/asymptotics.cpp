#include "logspiral/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "logspiral/linalg.hpp"
#include "logspiral/matrices.hpp"

namespace logspiral {

namespace {

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Complex Hl_limit(const Angles& angles, int l) {
  const int M = angles.branches();
  const double sM = parity(M);
  const double tl = angles.at(l);
  Complex sum((1.0 - sM) / 2.0, 0.0);
  for (int k = 0; k < l; ++k)
    sum += parity(l + k) * std::exp(Complex(0.0, 2.0) * (tl - angles.at(k)));
  for (int k = l; k < M; ++k)
    sum += sM * parity(l + k) * std::exp(Complex(0.0, 2.0) * (tl - angles.at(k)));
  return sum;
}

void require_odd_ge3(const SpiralConfig& cfg, const char* who) {
  if (cfg.M < 3 || cfg.M % 2 == 0)
    throw DomainError(std::string(who) + ": supported only for odd M >= 3");
}

int env_threads() {
  const char* v = std::getenv("SPIRAL_THREADS");
  if (!v) return 1;
  const int t = std::atoi(v);
  return t < 1 ? 1 : t;
}

}  // namespace

LimitPack limit_pack(const Angles& angles) {
  const int M = angles.branches();
  LimitPack p;
  p.kbar = K_limit(angles);
  p.hbar.resize(static_cast<std::size_t>(M) - 1);
  for (int l = 1; l < M; ++l) p.hbar[l - 1] = Hl_limit(angles, l);
  p.admissible = std::abs(p.kbar) > kDegTol;
  if (p.admissible) {
    p.hbar_ratio.resize(p.hbar.size());
    p.fbar.resize(p.hbar.size());
    p.gbar.resize(p.hbar.size());
    for (std::size_t i = 0; i < p.hbar.size(); ++i) {
      p.hbar_ratio[i] = p.hbar[i] / p.kbar;
      p.fbar[i] = p.hbar_ratio[i].imag();
      p.gbar[i] = p.hbar_ratio[i].real();
    }
  }
  return p;
}

bool is_admissible(const Angles& angles) { return std::abs(K_limit(angles)) > kDegTol; }

DerivativeLimits derivative_limits(const Angles& angles) {
  const int M = angles.branches();
  const double sM = parity(M);
  const Complex i2(0.0, 2.0);
  DerivativeLimits d;
  // lim -a^2 dK/da: every exponential term differentiates to
  // (angle offset) * e^{-2i(...)} scaled by lim -a^2 dA/da = -2.
  d.dK = Complex((sM - 1.0) * kPi, 0.0);
  for (int k = 1; k < M; ++k)
    d.dK += -2.0 * sM * parity(k) * (angles.at(k) - kPi) * std::exp(-i2 * angles.at(k));
  d.dH.resize(static_cast<std::size_t>(M) - 1);
  for (int l = 1; l < M; ++l) {
    const double tl = angles.at(l);
    Complex s(-(1.0 + sM) * kPi, 0.0);
    for (int k = 0; k < l; ++k)
      s += -2.0 * parity(l + k) * (angles.at(k) - tl + kPi) * std::exp(-i2 * (angles.at(k) - tl));
    for (int k = l; k < M; ++k)
      s += -2.0 * sM * parity(l + k) * (angles.at(k) - tl - kPi) *
           std::exp(-i2 * (angles.at(k) - tl));
    d.dH[l - 1] = s;
  }
  const LimitPack lim = limit_pack(angles);
  d.has_RI = lim.admissible;
  if (d.has_RI) {
    d.RI.resize(d.dH.size());
    for (std::size_t i = 0; i < d.dH.size(); ++i)
      d.RI[i] = (d.dH[i] * lim.kbar - d.dK * lim.hbar[i]) / (lim.kbar * lim.kbar);
  }
  return d;
}

Complex ref_RI(const SpiralConfig& cfg, int l) {
  require_odd_ge3(cfg, "ref_RI");
  if (l < 1 || l > cfg.M - 1) throw DomainError("ref_RI: l out of range");
  const double t1 = cfg.n * kPi / cfg.M;
  const Complex e2it1 = std::exp(Complex(0.0, 2.0 * t1));
  const Complex e2ilt1 = std::exp(Complex(0.0, 2.0 * l * t1));
  return Complex(0.0, -kPi) * (parity(l) * e2ilt1 - 1.0) * (1.0 + e2it1) / std::sin(2.0 * t1);
}

GradPair grad_bar(const SpiralConfig& cfg) {
  require_odd_ge3(cfg, "grad_bar");
  const double t1 = cfg.n * kPi / cfg.M;
  const double s1 = std::sin(t1);
  if (s1 == 0.0) throw DomainError("grad_bar: sin(theta_1) vanishes");
  const double s1sq = s1 * s1;
  const double s2t1 = std::sin(2.0 * t1);
  const std::size_t dim = static_cast<std::size_t>(cfg.M) - 1;
  GradPair g{RMat(dim, dim), RMat(dim, dim)};
  for (int l = 1; l < cfg.M; ++l)
    for (int m = 1; m < cfg.M; ++m) {
      const double t_m = m * t1;
      const double t_lm = (l - m) * t1;  // signed index, theta_k = k*theta_1
      double f, gr;
      if (l == m) {
        f = 2.0 * s1sq - parity(m) * s2t1 * std::sin(2.0 * t_m);
        gr = parity(m) * std::cos(2.0 * t_m) * s2t1;
      } else if (l < m) {
        f = parity(m + 1) * s2t1 * (std::sin(2.0 * t_m) + parity(l) * std::sin(2.0 * t_lm));
        gr = parity(m) * s2t1 * (std::cos(2.0 * t_m) - parity(l) * std::cos(2.0 * t_lm));
      } else {
        f = parity(m + 1) * s2t1 * (std::sin(2.0 * t_m) - parity(l) * std::sin(2.0 * t_lm));
        gr = parity(m) * s2t1 * (std::cos(2.0 * t_m) + parity(l) * std::cos(2.0 * t_lm));
      }
      g.F(l - 1, m - 1) = f / s1sq;
      g.G(l - 1, m - 1) = gr / s1sq;
    }
  return g;
}

namespace {

RMat grad_limit_fd(const Angles& angles, bool imag_part) {
  const std::size_t dim = angles.size();
  const double h = 1e-6;
  RMat out(dim, dim);
  RVec base = angles.values();
  for (std::size_t j = 0; j < dim; ++j) {
    RVec up = base, dn = base;
    up[j] += h;
    dn[j] -= h;
    const LimitPack lp = limit_pack(Angles(up));
    const LimitPack lm = limit_pack(Angles(dn));
    if (!lp.admissible || !lm.admissible)
      throw DegenerateSystem("gradF_general: inadmissible point inside the stencil");
    for (std::size_t i = 0; i < dim; ++i) {
      const double vp = imag_part ? lp.fbar[i] : lp.gbar[i];
      const double vm = imag_part ? lm.fbar[i] : lm.gbar[i];
      out(i, j) = (vp - vm) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace

RMat gradF_general(const Angles& angles) {
  if (!is_admissible(angles)) throw DegenerateSystem("gradF_general: inadmissible angles");
  return grad_limit_fd(angles, true);
}

RMat gradG_general(const Angles& angles) {
  if (!is_admissible(angles)) throw DegenerateSystem("gradG_general: inadmissible angles");
  return grad_limit_fd(angles, false);
}

RMat matrix_C(const SpiralConfig& cfg) {
  require_odd_ge3(cfg, "matrix_C");
  if (static_cast<std::size_t>(cfg.M) - 1 > kMaxRealDim)
    throw DomainError("matrix_C: dimension exceeds cap");
  const double t1 = cfg.n * kPi / cfg.M;
  const double s1sq = std::sin(t1) * std::sin(t1);
  const GradPair g = grad_bar(cfg);
  RMat C(g.F.rows(), g.F.cols());
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) C(i, j) = s1sq * g.F(i, j);
  return C;
}

std::vector<CScanRow> scan_C(int maxM) {
  if (maxM < 3) throw DomainError("scan_C: maxM must be >= 3");
  if (static_cast<std::size_t>(maxM) - 1 > kMaxRealDim)
    throw DomainError("scan_C: maxM exceeds dimension cap");
  std::vector<CScanRow> rows;
  for (int M = 3; M <= maxM; M += 2)
    for (int n : {1, 2}) rows.push_back({M, n, 0.0, 0.0});
  auto work = [&rows](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const RMat C = matrix_C(SpiralConfig(rows[i].M, rows[i].n));
      rows[i].det = det_elimination(C);
      rows[i].sigma_min = sigma_min(C);
    }
  };
  const int nthreads = std::min<int>(env_threads(), static_cast<int>(rows.size()));
  if (nthreads <= 1) {
    work(0, rows.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (rows.size() + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(rows.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

RVec eigen_table(const SpiralConfig& cfg) {
  if ((cfg.M != 3 && cfg.M != 5 && cfg.M != 7 && cfg.M != 9) || (cfg.n != 1 && cfg.n != 2))
    throw DomainError("eigen_table: supported for M in {3,5,7,9}, n in {1,2}");
  return eigenvalues_real_sorted(matrix_C(cfg));
}

RVec table2_reference(const SpiralConfig& cfg) {
  const double c7 = std::cos(kPi / 7.0), c9 = std::cos(kPi / 9.0);
  const double r5 = std::sqrt(5.0);
  RVec lam;
  auto pairs = [&lam](std::initializer_list<double> vals) {
    for (double v : vals) {
      lam.push_back(v);
      lam.push_back(v);
    }
  };
  const int key = cfg.M * 10 + cfg.n;
  switch (key) {
    case 31: case 32: pairs({9.0 / 4.0}); break;
    case 51: pairs({5.0 / 2.0, -5.0 * r5 / 8.0 + 5.0 / 8.0}); break;
    case 52: pairs({5.0 / 2.0, 5.0 * r5 / 8.0 + 5.0 / 8.0}); break;
    case 71:
      pairs({-2.0 * c7 * c7 + 3.0 * c7 + 1.5, -4.0 * c7 * c7 - c7 + 3.0,
             -c7 * c7 - 2.0 * c7 + 2.5});
      break;
    case 72:
      pairs({5.0 * c7 * c7 - c7 / 2.0 - 0.25, 6.0 * c7 * c7 - 2.0 * c7 - 1.0,
             -4.0 * c7 * c7 - c7 + 3.0});
      break;
    case 91:
      pairs({-2.0 * c9 * c9 + 2.0 * c9 + 2.5, -2.0 * c9 * c9 - c9 + 2.5, 1.5 - 3.0 * c9,
             -5.0 * c9 * c9 + 2.0 * c9 + 2.5});
      break;
    case 92:
      pairs({4.0 * c9 * c9 - c9 - 0.5, 6.0 * c9 * c9 - 1.5, c9 * c9 - 5.0 * c9 / 2.0 - 0.5,
             -2.0 * c9 * c9 - c9 + 2.5});
      break;
    default:
      throw DomainError("table2_reference: supported for M in {3,5,7,9}, n in {1,2}");
  }
  std::sort(lam.begin(), lam.end());
  return lam;
}

EvenMFacts evenM_facts(const SpiralConfig& cfg, const Angles& angles) {
  if (cfg.M < 4 || cfg.M % 2 != 0) throw DomainError("evenM_facts: M must be even and >= 4");
  if (angles.branches() != cfg.M)
    throw DomainError("evenM_facts: angle count does not match M");
  EvenMFacts facts;
  facts.kbar_at_ref = K_limit(reference_angles(cfg));
  const LimitPack lp = limit_pack(angles);
  facts.have_residual = lp.admissible;
  if (lp.admissible) {
    facts.f_formula_residual.resize(lp.fbar.size());
    for (std::size_t l = 1; l <= lp.fbar.size(); ++l)
      facts.f_formula_residual[l - 1] =
          lp.fbar[l - 1] - parity(static_cast<int>(l)) * std::sin(2.0 * angles.at(static_cast<int>(l)));
  }
  return facts;
}

}  // namespace logspiral
