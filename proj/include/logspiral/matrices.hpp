#pragma once

#include "logspiral/model.hpp"
#include "logspiral/types.hpp"

namespace logspiral {

/// Full M x M system matrix: entry (m,k) = e^{A(theta_k - theta_m)} weighted
/// by e^{-pi A} above the diagonal, cosh(pi A) on it, e^{pi A} below.
CMat build_A(double a, const Angles& angles);

/// Reduced system: B gprime = -b, obtained by subtracting the first equation
/// from the remaining M-1 and dropping the first column.
struct SystemMatrices {
  CMat B;   // (M-1) x (M-1)
  CVec b;   // length M-1
};

SystemMatrices build_B_and_b(double a, const Angles& angles);

/// Closed-form Cramer denominator
///   K = (e^{pi A} + (-1)^M e^{-pi A})/2 + (-1)^M sum_k (-1)^k e^{A(theta_k - pi)}.
Complex K_closed(double a, const Angles& angles);

/// Closed-form Cramer numerator for column l (1..M-1).
Complex H_closed(double a, const Angles& angles, int l);

/// Limit of K as a -> infinity (A -> -2i), for admissibility tests.
Complex K_limit(const Angles& angles);

enum class DetMode { Auto, Cofactor, Elimination };

/// Reference determinant: cofactor expansion up to 12 x 12 (Auto), pivoted
/// elimination beyond. Independent of every closed form in this module.
Complex det_bruteforce(const CMat& m, DetMode mode = DetMode::Auto);

/// det B = K * sinh^{M-2}(pi A) and det B_l = H_l * sinh^{M-2}(pi A).
Complex detB_closed(double a, const Angles& angles);
Complex detBl_closed(double a, const Angles& angles, int l);

/// B with column l (1-based) replaced by -b, materialized explicitly.
CMat build_Bl(double a, const Angles& angles, int l);

/// Cramer solution gprime = (H_1/K, ..., H_{M-1}/K). Throws DegenerateSystem
/// when |K| <= kDegTol or the angle vector is inadmissible (|K_limit| <= kDegTol).
CVec solve_gprime(double a, const Angles& angles);

/// Parity-indexed closed-form LU factors of the full matrix.
struct LUFactors {
  CMat L;  // unit lower triangular
  CMat U;  // upper triangular
};

LUFactors lu_factor_A(double a, const Angles& angles);

/// det A = s^{2p} c^q with M = 2p + q, q in {0,1}.
Complex detA_closed(double a, const Angles& angles);

}  // namespace logspiral
