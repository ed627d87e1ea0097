#include "logspiral/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace logspiral {

namespace {

template <class T>
double mag(const T& x) {
  return std::abs(x);
}

template <class T>
std::vector<T> lu_solve_impl(Matrix<T> A, std::vector<T> b, double pivot_tol) {
  const std::size_t n = A.rows();
  if (A.cols() != n || b.size() != n) throw DomainError("lu_solve: shape mismatch");
  double scale = 0.0;
  for (const auto& v : A.data()) scale = std::max(scale, mag(v));
  if (scale == 0.0) throw DegenerateJacobian("lu_solve: zero matrix");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (mag(A(r, col)) > mag(A(piv, col))) piv = r;
    if (mag(A(piv, col)) < pivot_tol * scale)
      throw DegenerateJacobian("lu_solve: pivot below tolerance");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = A(r, col) / A(col, col);
      A(r, col) = T{};
      for (std::size_t j = col + 1; j < n; ++j) A(r, j) -= f * A(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

template <class T>
T det_elim_impl(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("det: matrix must be square");
  if (n == 0) return T{1};
  T det{1};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (mag(m(r, col)) > mag(m(piv, col))) piv = r;
    if (mag(m(piv, col)) == 0.0) return T{};
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = m(r, col) / m(col, col);
      for (std::size_t j = col + 1; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

// Householder reduction to upper Hessenberg form (complex, in place).
void hessenberg(CMat& h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;
    Complex alpha = h(k + 1, k);
    const double am = std::abs(alpha);
    Complex phase = (am == 0.0) ? Complex(1.0, 0.0) : alpha / am;
    Complex beta = -phase * colnorm;
    CVec v(n, Complex{});
    v[k + 1] = alpha - beta;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    // H <- (I - 2 v v^* / v^* v) H (I - 2 v v^* / v^* v)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    h(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
  }
}

// One explicit shifted QR sweep on the unreduced window [lo, hi), via Givens
// rotations exploiting the Hessenberg profile.
void qr_sweep_window(CMat& h, std::size_t lo, std::size_t hi, Complex shift) {
  struct Rot {
    Complex c, s;
  };
  std::vector<Rot> rots(hi - lo > 0 ? hi - lo - 1 : 0);
  for (std::size_t i = lo; i < hi; ++i) h(i, i) -= shift;
  for (std::size_t i = lo; i + 1 < hi; ++i) {
    const Complex a = h(i, i), b = h(i + 1, i);
    const double r = std::sqrt(std::norm(a) + std::norm(b));
    Rot rot;
    if (r == 0.0) {
      rot.c = Complex(1.0, 0.0);
      rot.s = Complex{};
    } else {
      rot.c = std::conj(a) / r;
      rot.s = std::conj(b) / r;
    }
    rots[i - lo] = rot;
    for (std::size_t j = i; j < hi; ++j) {
      const Complex x = h(i, j), y = h(i + 1, j);
      h(i, j) = rot.c * x + rot.s * y;
      h(i + 1, j) = -std::conj(rot.s) * x + std::conj(rot.c) * y;
    }
  }
  for (std::size_t i = lo; i + 1 < hi; ++i) {
    const Rot rot = rots[i - lo];
    for (std::size_t r = lo; r <= std::min(i + 2, hi - 1); ++r) {
      const Complex x = h(r, i), y = h(r, i + 1);
      h(r, i) = x * std::conj(rot.c) + y * std::conj(rot.s);
      h(r, i + 1) = -x * rot.s + y * rot.c;
    }
  }
  for (std::size_t i = lo; i < hi; ++i) h(i, i) += shift;
}

Complex wilkinson_shift(const CMat& h, std::size_t m) {
  const Complex a = h(m - 2, m - 2), b = h(m - 2, m - 1);
  const Complex c = h(m - 1, m - 2), d = h(m - 1, m - 1);
  const Complex tr2 = (a + d) / 2.0;
  const Complex disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
  const Complex e1 = tr2 + disc, e2 = tr2 - disc;
  return (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
}

}  // namespace

RVec lu_solve(RMat A, RVec b, double pivot_tol) {
  return lu_solve_impl(std::move(A), std::move(b), pivot_tol);
}

CVec lu_solve(CMat A, CVec b, double pivot_tol) {
  return lu_solve_impl(std::move(A), std::move(b), pivot_tol);
}

Complex det_elimination(CMat m) { return det_elim_impl(std::move(m)); }
double det_elimination(RMat m) { return det_elim_impl(std::move(m)); }

CVec eigenvalues(CMat m, int max_iter_per_eig) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("eigenvalues: matrix must be square");
  if (n == 0) return {};
  hessenberg(m);
  const double eps = std::numeric_limits<double>::epsilon();
  double hnorm = 0.0;
  for (const auto& v : m.data()) hnorm = std::max(hnorm, std::abs(v));
  // relative test plus an absolute eps * ||H|| floor for small diagonal blocks
  auto negligible = [&](std::size_t i) {
    const double scale = std::abs(m(i, i)) + std::abs(m(i + 1, i + 1));
    return std::abs(m(i + 1, i)) <= std::max(4.0 * eps * scale, 2.0 * eps * hnorm);
  };
  CVec eig;
  eig.reserve(n);
  std::size_t active = n;
  int iters = 0;
  const int budget = max_iter_per_eig * static_cast<int>(n);
  while (active > 0) {
    // split off converged trailing eigenvalues and zero interior couplings
    for (std::size_t i = 0; i + 1 < active; ++i)
      if (negligible(i)) m(i + 1, i) = Complex{};
    if (active == 1 || std::abs(m(active - 1, active - 2)) == 0.0) {
      eig.push_back(m(active - 1, active - 1));
      --active;
      continue;
    }
    // trailing unreduced window [lo, active)
    std::size_t lo = active - 1;
    while (lo > 0 && std::abs(m(lo, lo - 1)) != 0.0) --lo;
    if (++iters > budget) throw NoConvergence("eigenvalues: QR iteration stalled");
    Complex shift = wilkinson_shift(m, active);
    if (iters % 13 == 0)  // exceptional shift to break symmetric stalls
      shift = m(active - 1, active - 1) +
              Complex(1.5 * std::abs(m(active - 1, active - 2)), 0.0);
    qr_sweep_window(m, lo, active, shift);
  }
  return eig;
}

RVec eigenvalues_real_sorted(const RMat& m, double imag_tol) {
  CMat c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Complex(m(i, j), 0.0);
  CVec eig = eigenvalues(std::move(c));
  RVec out;
  out.reserve(eig.size());
  for (const Complex& z : eig) {
    if (std::abs(z.imag()) > imag_tol)
      throw DomainError("eigenvalues_real_sorted: complex eigenvalue encountered");
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

RVec jacobi_eigenvalues(RMat m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("jacobi_eigenvalues: matrix must be square");
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  RVec eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double sigma_min(const RMat& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("sigma_min: matrix must be square");
  RMat ata(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m(k, i) * m(k, j);
      ata(i, j) = s;
    }
  const RVec eig = jacobi_eigenvalues(std::move(ata));
  return std::sqrt(std::max(0.0, eig.front()));
}

void KahanSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

void KahanSum::add_product(double x, double y) {
  const double p = x * y;
  const double err = std::fma(x, y, -p);  // exact product remainder
  add(p);
  add(err);
}

Complex compensated_row_defect(const CVec& row, const RVec& g, Complex rhs) {
  if (row.size() != g.size()) throw DomainError("compensated_row_defect: size mismatch");
  KahanSum re, im;
  for (std::size_t k = 0; k < row.size(); ++k) {
    re.add_product(row[k].real(), g[k]);
    im.add_product(row[k].imag(), g[k]);
  }
  re.add(-rhs.real());
  im.add(-rhs.imag());
  return Complex(re.value(), im.value());
}

}  // namespace logspiral
