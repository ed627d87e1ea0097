#include "logspiral/matrices.hpp"

#include <cmath>
#include <cstddef>

#include "logspiral/linalg.hpp"

namespace logspiral {

namespace {

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Complex cpow_int(Complex base, int e) {
  Complex out(1.0, 0.0);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

void check_dim(std::size_t M) {
  if (M > kMaxComplexDim) throw DomainError("matrix dimension exceeds cap");
}

Complex det_cofactor(const CMat& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Complex det{};
  CMat minor(n - 1, n - 1);
  double sign = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    }
    det += sign * m(0, c) * det_cofactor(minor);
    sign = -sign;
  }
  return det;
}

}  // namespace

CMat build_A(double a, const Angles& angles) {
  const std::size_t M = angles.size() + 1;
  check_dim(M);
  const Complex A = mobius_A(a);
  const Complex up = std::exp(-kPi * A);
  const Complex down = std::exp(kPi * A);
  const Complex diag = (up + down) / 2.0;  // cosh(pi A)
  CMat out(M, M);
  for (std::size_t m = 0; m < M; ++m) {
    const double tm = angles.at(static_cast<int>(m));
    for (std::size_t k = 0; k < M; ++k) {
      const double tk = angles.at(static_cast<int>(k));
      const Complex w = (k == m) ? diag : (tk > tm ? up : down);
      out(m, k) = std::exp(A * (tk - tm)) * w;
    }
  }
  require_finite(out, "build_A");
  return out;
}

SystemMatrices build_B_and_b(double a, const Angles& angles) {
  const std::size_t M = angles.size() + 1;
  if (M < 2) throw DomainError("build_B_and_b: M must be >= 2");
  const CMat Afull = build_A(a, angles);
  // A0 = E * A with E subtracting row 0 from every other row; B is the
  // bottom-right (M-1) x (M-1) block, b the remaining first column.
  SystemMatrices sys;
  sys.B = CMat(M - 1, M - 1);
  sys.b.resize(M - 1);
  for (std::size_t m = 1; m < M; ++m) {
    sys.b[m - 1] = Afull(m, 0) - Afull(0, 0);
    for (std::size_t k = 1; k < M; ++k) sys.B(m - 1, k - 1) = Afull(m, k) - Afull(0, k);
  }
  return sys;
}

Complex K_closed(double a, const Angles& angles) {
  const std::size_t M = angles.size() + 1;
  const Complex A = mobius_A(a);
  const double sM = parity(static_cast<int>(M));
  Complex sum = (std::exp(kPi * A) + sM * std::exp(-kPi * A)) / 2.0;
  for (std::size_t k = 1; k < M; ++k)
    sum += sM * parity(static_cast<int>(k)) *
           std::exp(A * (angles.at(static_cast<int>(k)) - kPi));
  return sum;
}

Complex H_closed(double a, const Angles& angles, int l) {
  const int M = angles.branches();
  if (l < 1 || l > M - 1) throw DomainError("H_closed: l out of range");
  const Complex A = mobius_A(a);
  const double sM = parity(M);
  const double tl = angles.at(l);
  Complex sum = (std::exp(kPi * A) - sM * std::exp(-kPi * A)) / 2.0;
  for (int k = 0; k < l; ++k)
    sum += parity(l + k) * std::exp(A * (angles.at(k) - tl + kPi));
  for (int k = l; k < M; ++k)
    sum += sM * parity(l + k) * std::exp(A * (angles.at(k) - tl - kPi));
  return sum;
}

Complex K_limit(const Angles& angles) {
  const int M = angles.branches();
  const double sM = parity(M);
  const Complex A(0.0, -2.0);
  Complex sum((1.0 + sM) / 2.0, 0.0);
  for (int k = 1; k < M; ++k)
    sum += sM * parity(k) * std::exp(A * angles.at(k));
  return sum;
}

Complex det_bruteforce(const CMat& m, DetMode mode) {
  if (m.rows() != m.cols()) throw DomainError("det_bruteforce: matrix must be square");
  if (m.rows() == 0) return Complex(1.0, 0.0);
  switch (mode) {
    case DetMode::Cofactor:
      if (m.rows() > 12) throw DomainError("det_bruteforce: cofactor mode capped at 12 x 12");
      return det_cofactor(m);
    case DetMode::Elimination:
      return det_elimination(m);
    case DetMode::Auto:
    default:
      return m.rows() <= 12 ? det_cofactor(m) : det_elimination(m);
  }
}

Complex detB_closed(double a, const Angles& angles) {
  const int M = angles.branches();
  if (M < 2) throw DomainError("detB_closed: M must be >= 2");
  const Complex sh = std::sinh(kPi * mobius_A(a));
  return K_closed(a, angles) * cpow_int(sh, M - 2);
}

Complex detBl_closed(double a, const Angles& angles, int l) {
  const int M = angles.branches();
  if (M < 2) throw DomainError("detBl_closed: M must be >= 2");
  const Complex sh = std::sinh(kPi * mobius_A(a));
  return H_closed(a, angles, l) * cpow_int(sh, M - 2);
}

CMat build_Bl(double a, const Angles& angles, int l) {
  const int M = angles.branches();
  if (l < 1 || l > M - 1) throw DomainError("build_Bl: l out of range");
  SystemMatrices sys = build_B_and_b(a, angles);
  CMat out = sys.B;
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(M); ++i)
    out(i, static_cast<std::size_t>(l) - 1) = -sys.b[i];
  return out;
}

CVec solve_gprime(double a, const Angles& angles) {
  const int M = angles.branches();
  if (M < 2) throw DomainError("solve_gprime: M must be >= 2");
  if (std::abs(K_limit(angles)) <= kDegTol)
    throw DegenerateSystem("solve_gprime: inadmissible angles (limit denominator ~ 0)");
  const Complex K = K_closed(a, angles);
  if (std::abs(K) <= kDegTol)
    throw DegenerateSystem("solve_gprime: Cramer denominator ~ 0");
  CVec H(static_cast<std::size_t>(M) - 1);
  for (int l = 1; l < M; ++l) H[static_cast<std::size_t>(l) - 1] = H_closed(a, angles, l) / K;
  return H;
}

LUFactors lu_factor_A(double a, const Angles& angles) {
  const std::size_t M = angles.size() + 1;
  check_dim(M);
  const ScalarPack p = scalar_pack(a, angles);
  const Complex r = p.r, rinv = 1.0 / p.r;
  for (const Complex probe : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)})
    if (std::abs(r - probe) < 1e-12)
      throw SingularParameter("lu_factor_A: r in the excluded set {1,-1,i,-i}");
  const Complex odd_L = 2.0 * rinv / (r + rinv);
  const Complex even_L = 2.0 * (rinv + 1.0) * (rinv - 1.0) / ((r - rinv) * (r - rinv));
  const Complex odd_diag = (r + rinv) / 2.0;
  const Complex even_diag = (r - rinv) * (r - rinv) / (2.0 * (r + rinv));
  const Complex odd_U = r;
  const Complex even_U = (r + 1.0) * (r - 1.0) / (r + rinv);

  LUFactors f;
  f.L = CMat::identity(M);
  f.U = CMat(M, M);
  for (std::size_t k = 1; k <= M; ++k)
    for (std::size_t j = 1; j < k; ++j)
      f.L(k - 1, j - 1) = p.rk[k - 1] / p.rk[j - 1] * ((j % 2 == 1) ? odd_L : even_L);
  for (std::size_t j = 1; j <= M; ++j) {
    f.U(j - 1, j - 1) = (j % 2 == 1) ? odd_diag : even_diag;
    for (std::size_t m = j + 1; m <= M; ++m)
      f.U(j - 1, m - 1) = p.rk[j - 1] / p.rk[m - 1] * ((j % 2 == 1) ? odd_U : even_U);
  }
  require_finite(f.L, "lu_factor_A L");
  require_finite(f.U, "lu_factor_A U");
  return f;
}

Complex detA_closed(double a, const Angles& angles) {
  const int M = angles.branches();
  const ScalarPack p = scalar_pack(a, angles);
  const int q = M % 2, pp = M / 2;
  return cpow_int(p.s, 2 * pp) * cpow_int(p.c, q);
}

}  // namespace logspiral
