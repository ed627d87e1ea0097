#include <doctest.h>

#include <cmath>

#include "logspiral/matrices.hpp"
#include "logspiral/rng.hpp"

using namespace logspiral;

namespace {

// explicit elimination matrix: identity with -1 down the first column
CMat elimination_matrix(std::size_t M) {
  CMat e = CMat::identity(M);
  for (std::size_t m = 1; m < M; ++m) e(m, 0) = Complex(-1.0, 0.0);
  return e;
}

CMat reduce_rows(const CMat& A) { return elimination_matrix(A.rows()) * A; }

}  // namespace

TEST_CASE("build_A: 1x1 case is cosh(pi A)") {
  const double a = 3.7;
  const CMat A = build_A(a, Angles());
  CHECK(A.rows() == 1);
  CHECK(std::abs(A(0, 0) - std::cosh(kPi * mobius_A(a))) < 1e-14);
}

TEST_CASE("build_A: M = 2 off-diagonal collapses to e^{-A pi/2}") {
  const double a = 2.5;
  const Complex Am = mobius_A(a);
  const CMat A = build_A(a, Angles({kPi / 2.0}));
  CHECK(std::abs(A(0, 1) - std::exp(-Am * kPi / 2.0)) < 1e-13);
  CHECK(std::abs(A(1, 0) - std::exp(Am * kPi / 2.0)) < 1e-13);
}

TEST_CASE("build_A matches the r, r_k pattern") {
  Rng rng(21);
  for (int it = 0; it < 30; ++it) {
    const int M = rng.uniform_int(2, 8);
    const double a = rng.uniform(0.5, 40.0);
    const Angles th = rng.ordered_angles(M);
    const ScalarPack p = scalar_pack(a, th);
    const CMat A = build_A(a, th);
    for (int m = 0; m < M; ++m)
      for (int k = 0; k < M; ++k) {
        Complex expect;
        if (k == m)
          expect = p.c;
        else if (k > m)
          expect = p.r * p.rk[m] / p.rk[k];
        else
          expect = (1.0 / p.r) * p.rk[m] / p.rk[k];
        CHECK(std::abs(A(m, k) - expect) <= 1e-13 * std::abs(expect));
      }
  }
}

TEST_CASE("build_B_and_b is the reduced block of the eliminated system") {
  Rng rng(22);
  for (int it = 0; it < 20; ++it) {
    const int M = rng.uniform_int(2, 8);
    const double a = rng.uniform(0.5, 40.0);
    const Angles th = rng.ordered_angles(M);
    const CMat A0 = reduce_rows(build_A(a, th));
    const SystemMatrices sys = build_B_and_b(a, th);
    // first row of the eliminated matrix is the first row of the original
    const CMat A = build_A(a, th);
    for (int k = 0; k < M; ++k) CHECK(A0(0, k) == A(0, k));
    for (int m = 1; m < M; ++m) {
      CHECK(std::abs(sys.b[m - 1] - A0(m, 0)) <= 1e-13);
      for (int k = 1; k < M; ++k) CHECK(std::abs(sys.B(m - 1, k - 1) - A0(m, k)) <= 1e-13);
    }
  }
}

TEST_CASE("build_B entries match their quotient expressions at M = 4") {
  const double a = 1.7;
  Rng rng(23);
  const Angles th = rng.ordered_angles(4);
  const ScalarPack p = scalar_pack(a, th);
  const SystemMatrices sys = build_B_and_b(a, th);
  const Complex r = p.r, c = p.c;
  const auto& rk = p.rk;
  // column 1: (r^{-1} r_{m+1} - r r_1)/r_2 below the corner, (c r_2 - r r_1)/r_2 on it
  CHECK(std::abs(sys.B(0, 0) - (c * rk[1] - r * rk[0]) / rk[1]) < 1e-13);
  CHECK(std::abs(sys.B(1, 0) - (rk[2] / r - r * rk[0]) / rk[1]) < 1e-13);
  CHECK(std::abs(sys.B(2, 0) - (rk[3] / r - r * rk[0]) / rk[1]) < 1e-13);
  // upper part: r (r_{m+1} - r_1)/r_{k+1}
  CHECK(std::abs(sys.B(0, 1) - r * (rk[1] - rk[0]) / rk[2]) < 1e-13);
  CHECK(std::abs(sys.B(0, 2) - r * (rk[1] - rk[0]) / rk[3]) < 1e-13);
  CHECK(std::abs(sys.B(1, 2) - r * (rk[2] - rk[0]) / rk[3]) < 1e-13);
  // b: (r^{-1} r_{m+1} - c r_1)/r_1
  for (int m = 1; m <= 3; ++m)
    CHECK(std::abs(sys.b[m - 1] - (rk[m] / r - c * rk[0]) / rk[0]) < 1e-13);
}

TEST_CASE("K and H reduce to the two-branch forms at M = 2") {
  const double a = 4.2, t1 = 1.1;
  const Complex A = mobius_A(a);
  const Angles th({t1});
  CHECK(std::abs(K_closed(a, th) - (std::cosh(kPi * A) - std::exp(A * (t1 - kPi)))) < 1e-13);
  CHECK(std::abs(H_closed(a, th, 1) - (std::cosh(kPi * A) - std::exp(A * (kPi - t1)))) <
        1e-13);
  // M = 2 reduced matrix is the 1x1 [K]
  const SystemMatrices sys = build_B_and_b(a, th);
  CHECK(std::abs(sys.B(0, 0) - K_closed(a, th)) < 1e-13);
}

TEST_CASE("K at the three-branch reference point approaches -i sqrt(3)") {
  const Angles ref = reference_angles(SpiralConfig(3, 1));
  const Complex K = K_closed(1e6, ref);
  // limit -i sqrt(3), first correction of modulus |dK|/a ~ 9.13e-6
  CHECK(std::abs(K - Complex(0.0, -std::sqrt(3.0))) < 1.2e-5);
  CHECK(std::abs(K - Complex(0.0, -std::sqrt(3.0))) > 5e-6);
}

TEST_CASE("det_bruteforce basics") {
  CHECK(std::abs(det_bruteforce(CMat::identity(3)) - Complex(1.0, 0.0)) == 0.0);
  CMat d(2, 2);
  d(0, 0) = Complex(2.0, 0.0);
  d(1, 1) = Complex(0.0, 3.0);
  CHECK(std::abs(det_bruteforce(d) - Complex(0.0, 6.0)) < 1e-15);
  CHECK_THROWS_AS(det_bruteforce(CMat(2, 3)), DomainError);
  CHECK_THROWS_AS(det_bruteforce(CMat::identity(13), DetMode::Cofactor), DomainError);
}

TEST_CASE("det_bruteforce modes agree on random 5x5 matrices") {
  Rng rng(31);
  for (int it = 0; it < 20; ++it) {
    CMat m(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex c = det_bruteforce(m, DetMode::Cofactor);
    const Complex e = det_bruteforce(m, DetMode::Elimination);
    CHECK(std::abs(c - e) <= 1e-10 * std::abs(e));
  }
}

TEST_CASE("closed-form determinants match the oracle") {
  Rng rng(7);
  double worstB = 0.0, worstBl = 0.0;
  for (int it = 0; it < 60; ++it) {
    const int M = rng.uniform_int(2, 9);
    const double a = rng.uniform(0.5, 50.0);
    const Angles th = rng.ordered_angles(M);
    const Complex oracle = det_bruteforce(build_B_and_b(a, th).B);
    worstB = std::max(worstB, std::abs(detB_closed(a, th) - oracle) / std::abs(oracle));
    for (int l = 1; l < M; ++l) {
      const Complex ol = det_bruteforce(build_Bl(a, th, l));
      worstBl = std::max(worstBl, std::abs(detBl_closed(a, th, l) - ol) / std::abs(ol));
    }
  }
  CHECK(worstB <= 1e-9);
  CHECK(worstBl <= 1e-9);
}

TEST_CASE("detB at M = 2 equals K directly") {
  const Angles th({2.0});
  CHECK(std::abs(detB_closed(3.0, th) - K_closed(3.0, th)) == 0.0);
}

TEST_CASE("solve_gprime on the symmetric family returns ones") {
  const Angles ref = reference_angles(SpiralConfig(3, 2));
  for (double a : {2.0, 17.0, 400.0}) {
    const CVec H = solve_gprime(a, ref);
    for (const Complex& h : H) CHECK(std::abs(h - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("solve_gprime near the n = 1 reference point at large a") {
  const Angles ref = reference_angles(SpiralConfig(3, 1));
  const CVec H = solve_gprime(1e6, ref);
  for (const Complex& h : H) CHECK(std::abs(h - Complex(1.0, 0.0)) < 1e-5);
}

TEST_CASE("solve_gprime rejects the inadmissible even-M reference point") {
  const Angles ref = reference_angles(SpiralConfig(4, 1));
  CHECK_THROWS_AS(solve_gprime(1e6, ref), DegenerateSystem);
}

TEST_CASE("solve_gprime satisfies the reduced system and the row reduction") {
  Rng rng(8);
  for (int it = 0; it < 25; ++it) {
    const int M = rng.uniform_int(2, 8);
    const double a = rng.uniform(0.5, 40.0);
    const Angles th = rng.ordered_angles(M);
    if (std::abs(K_limit(th)) < 1e-3 || std::abs(K_closed(a, th)) < 1e-3) continue;
    const CVec H = solve_gprime(a, th);
    const SystemMatrices sys = build_B_and_b(a, th);
    const CVec BH = sys.B * H;
    double bnorm = 0.0;
    for (const Complex& v : sys.b) bnorm = std::max(bnorm, std::abs(v));
    for (std::size_t i = 0; i < BH.size(); ++i)
      CHECK(std::abs(BH[i] + sys.b[i]) <= 1e-10 * bnorm);
    // lifting with g_0 = 1 makes every row of the full system equal row 0
    const CMat A = build_A(a, th);
    CVec g(static_cast<std::size_t>(M));
    g[0] = Complex(1.0, 0.0);
    for (int k = 1; k < M; ++k) g[k] = H[k - 1];
    const CVec rows = A * g;
    for (int m = 1; m < M; ++m) CHECK(std::abs(rows[m] - rows[0]) <= 1e-10 * std::abs(rows[0]));
  }
}

TEST_CASE("closed-form LU factors reproduce the full matrix") {
  Rng rng(9);
  for (int it = 0; it < 40; ++it) {
    const int M = rng.uniform_int(1, 8);
    const double a = rng.uniform(0.5, 50.0);
    const Angles th = M == 1 ? Angles() : rng.ordered_angles(M);
    const CMat A = build_A(a, th);
    const LUFactors f = lu_factor_A(a, th);
    for (std::size_t i = 0; i < f.L.rows(); ++i) {
      CHECK(f.L(i, i) == Complex(1.0, 0.0));
      for (std::size_t j = i + 1; j < f.L.cols(); ++j) CHECK(f.L(i, j) == Complex{});
      for (std::size_t j = 0; j < i; ++j) CHECK(f.U(i, j) == Complex{});
    }
    const CMat P = f.L * f.U;
    double amax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) {
        amax = std::max(amax, std::abs(A(i, j)));
        dmax = std::max(dmax, std::abs(P(i, j) - A(i, j)));
      }
    CHECK(dmax <= 1e-12 * amax);
    // diagonal product equals the closed form
    Complex prod(1.0, 0.0);
    for (std::size_t i = 0; i < f.U.rows(); ++i) prod *= f.U(i, i);
    CHECK(std::abs(prod - detA_closed(a, th)) <= 1e-10 * std::abs(prod));
  }
}

TEST_CASE("closed-form determinant of the full matrix") {
  const double a = 2.2;
  const ScalarPack p1 = scalar_pack(a, Angles());
  CHECK(std::abs(detA_closed(a, Angles()) - p1.c) == 0.0);  // M = 1: q = 1
  const Angles th2({1.3});
  const ScalarPack p2 = scalar_pack(a, th2);
  CHECK(std::abs(detA_closed(a, th2) - p2.s * p2.s) < 1e-14 * std::abs(p2.s * p2.s));
  Rng rng(12);
  for (int M = 3; M <= 8; ++M) {
    const double aa = rng.uniform(0.5, 50.0);
    const Angles th = rng.ordered_angles(M);
    const Complex oracle = det_bruteforce(build_A(aa, th));
    CHECK(std::abs(detA_closed(aa, th) - oracle) <= 1e-9 * std::abs(oracle));
  }
}
