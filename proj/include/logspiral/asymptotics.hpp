#pragma once

#include <vector>

#include "logspiral/model.hpp"
#include "logspiral/types.hpp"

namespace logspiral {

/// a -> infinity limits of the Cramer denominator/numerators at fixed angles,
/// with the ratio and its real/imaginary split when admissible.
struct LimitPack {
  Complex kbar;
  CVec hbar;        // length M-1
  bool admissible;  // |kbar| > kDegTol
  CVec hbar_ratio;  // hbar / kbar, empty when inadmissible
  RVec fbar;        // Im of the ratio
  RVec gbar;        // Re of the ratio
};

LimitPack limit_pack(const Angles& angles);

bool is_admissible(const Angles& angles);

/// Limits of -a^2 d/da of the denominator and numerators, and the quotient-rule
/// combination R + iI = lim -a^2 dH/da (present only when admissible).
struct DerivativeLimits {
  Complex dK;
  CVec dH;      // length M-1
  bool has_RI;
  CVec RI;      // empty when inadmissible
};

DerivativeLimits derivative_limits(const Angles& angles);

/// Closed form of (R+iI)_l at the reference angles,
///   -i pi ((-1)^l e^{2 i l theta_1} - 1)(1 + e^{2 i theta_1}) / sin(2 theta_1),
/// valid for odd M >= 3. For n = 2 the continuation is constant in a, so the
/// true limit vanishes while this expression does not; use derivative_limits
/// for the limit itself.
Complex ref_RI(const SpiralConfig& cfg, int l);

/// Gradients of the limiting imaginary/real parts at the reference angles
/// (three-case closed forms with theta_k = k*theta_1), already divided by
/// sin^2(theta_1). Odd M >= 3 only.
struct GradPair {
  RMat F;
  RMat G;
};

GradPair grad_bar(const SpiralConfig& cfg);

/// Central-difference Jacobians of the limit ratio's imaginary and real parts
/// at an arbitrary admissible angle vector (step 1e-6).
RMat gradF_general(const Angles& angles);
RMat gradG_general(const Angles& angles);

/// Nondegeneracy matrix: same three-case entries as sin^2(theta_1) * grad F.
RMat matrix_C(const SpiralConfig& cfg);

struct CScanRow {
  int M;
  int n;
  double det;
  double sigma_min;
};

/// Invertibility scan of the nondegeneracy matrix over odd M in [3, maxM],
/// n in {1,2}. Honors SPIRAL_THREADS for fan-out.
std::vector<CScanRow> scan_C(int maxM);

/// Numerically computed eigenvalues of sin^2(theta_1) * grad F at the
/// reference angles, ascending. Supported for M in {3,5,7,9}, n in {1,2}.
RVec eigen_table(const SpiralConfig& cfg);

/// The matching closed-form eigenvalues, ascending, doubled multiplicities.
RVec table2_reference(const SpiralConfig& cfg);

/// Even-M facts: the limit denominator at the reference angles (vanishes for
/// even M >= 4 except the symmetric case M = 2n), and the residual of
/// F_l = (-1)^l sin(2 theta_l) at the given angles when admissible.
struct EvenMFacts {
  Complex kbar_at_ref;
  bool have_residual;
  RVec f_formula_residual;
};

EvenMFacts evenM_facts(const SpiralConfig& cfg, const Angles& angles);

}  // namespace logspiral
