#pragma once

#include "logspiral/types.hpp"

namespace logspiral {

/// Solve A x = b by partial-pivoted LU. Throws DegenerateJacobian when a pivot
/// falls below pivot_tol * max|A|.
RVec lu_solve(RMat A, RVec b, double pivot_tol = 1e-12);
CVec lu_solve(CMat A, CVec b, double pivot_tol = 1e-14);

/// Determinant by partial-pivoted elimination.
Complex det_elimination(CMat m);
double det_elimination(RMat m);

/// All eigenvalues of a (small) complex dense matrix: Householder reduction to
/// Hessenberg form, then explicitly shifted QR with Wilkinson shifts.
CVec eigenvalues(CMat m, int max_iter_per_eig = 60);

/// Eigenvalues of a real matrix, ascending by real part. Throws DomainError if
/// any eigenvalue has |Im| > imag_tol (caller expects a real spectrum).
RVec eigenvalues_real_sorted(const RMat& m, double imag_tol = 1e-8);

/// Eigenvalues of a symmetric real matrix by cyclic Jacobi, ascending.
RVec jacobi_eigenvalues(RMat m);

/// Smallest singular value via the spectrum of A^T A.
double sigma_min(const RMat& m);

/// Compensated (Neumaier) accumulator; products are split with std::fma so the
/// returned sum carries the exact rounding remainders.
class KahanSum {
 public:
  void add(double x);
  void add_product(double x, double y);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

/// dot(row, g) - rhs with complex row, real weights, evaluated with compensated
/// accumulation; used for defect measurements where naive rounding would
/// swamp the true residual.
Complex compensated_row_defect(const CVec& row, const RVec& g, Complex rhs);

}  // namespace logspiral
