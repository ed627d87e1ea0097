#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace logspiral {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

/// Degeneracy tolerance on the Cramer denominator and its a->inf limit.
inline constexpr double kDegTol = 1e-10;
/// Linear-independence tolerance for the 2x2 weight/exponent system.
inline constexpr double kLiTol = 1e-10;

// Dimension caps, overridable at compile time.
#ifndef LOGSPIRAL_MAX_COMPLEX_DIM
#define LOGSPIRAL_MAX_COMPLEX_DIM 64
#endif
#ifndef LOGSPIRAL_MAX_REAL_DIM
#define LOGSPIRAL_MAX_REAL_DIM 128
#endif
/// Dimension cap for dense complex system matrices.
inline constexpr std::size_t kMaxComplexDim = LOGSPIRAL_MAX_COMPLEX_DIM;
/// Dimension cap for the real gradient/nondegeneracy matrices (M-1 side).
inline constexpr std::size_t kMaxRealDim = LOGSPIRAL_MAX_REAL_DIM;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument values (non-finite, out-of-range, unsupported case).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Cramer denominator (or its limit) is numerically zero.
class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

/// r falls in the excluded set {1,-1,i,-i} of the LU factorization.
class SingularParameter : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateJacobian : public Error {
 public:
  using Error::Error;
};

/// Angle vector lost the strict ordering 0 < theta_1 < ... < theta_{M-1}.
class OrderingViolated : public Error {
 public:
  using Error::Error;
};

/// A nondegeneracy condition (invertibility of the gradient matrix) failed.
class NondegeneracyFailure : public Error {
 public:
  using Error::Error;
};

class LinearDependence : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Dense row-major matrix over double or Complex. Small sizes only.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  Matrix operator*(const Matrix& rhs) const {
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T v = (*this)(i, k);
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(rows_, T{});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using CMat = Matrix<Complex>;
using RMat = Matrix<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <class T>
void require_finite(const Matrix<T>& m, const char* what) {
  for (const auto& v : m.data())
    if (!is_finite(v)) throw DomainError(std::string(what) + ": non-finite entry");
}

template <class T>
void require_finite(const std::vector<T>& v, const char* what) {
  for (const auto& x : v)
    if (!is_finite(x)) throw DomainError(std::string(what) + ": non-finite entry");
}

}  // namespace logspiral
