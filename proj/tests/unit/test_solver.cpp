#include <doctest.h>

#include <cmath>

#include "logspiral/asymptotics.hpp"
#include "logspiral/matrices.hpp"
#include "logspiral/rng.hpp"
#include "logspiral/solver.hpp"

using namespace logspiral;

namespace {

double inf_norm(const RVec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(const RVec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

const Branch& branch_3_1() {
  static const Branch b = continue_branch(SpiralConfig(3, 1), 1e6, 1e2, 41);
  return b;
}

}  // namespace

TEST_CASE("F vanishes identically on the symmetric branch") {
  const Angles ref = reference_angles(SpiralConfig(3, 2));
  for (double a : {2.0, 50.0, 1e4}) CHECK(inf_norm(F_of(a, ref)) < 1e-13);
}

TEST_CASE("analytic Jacobian matches central differences") {
  Rng rng(17);
  const NewtonSettings settings;  // fd_step default 1e-7
  for (int M : {3, 5, 7}) {
    const double a = rng.uniform(2.0, 100.0);
    RVec th = reference_angles(SpiralConfig(M, 1)).values();
    for (auto& t : th) t += rng.uniform(-0.02, 0.02);
    const Angles angles(th);
    const RMat J = analytic_jacobian(a, angles);
    const RMat Jfd = fd_jacobian(a, angles, settings.fd_step);
    for (std::size_t j = 0; j < th.size(); ++j)
      for (std::size_t i = 0; i < th.size(); ++i)
        CHECK(std::abs(J(i, j) - Jfd(i, j)) < 1e-6);
  }
}

TEST_CASE("F approaches its limit at fixed angles") {
  const Angles ref = reference_angles(SpiralConfig(5, 1));
  const LimitPack lp = limit_pack(ref);
  double prev = 1e9;
  for (double a : {1e2, 1e3, 1e4}) {
    const RVec F = F_of(a, ref);
    double diff = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) diff = std::max(diff, std::abs(F[i] - lp.fbar[i]));
    CHECK(diff < prev);
    CHECK(diff < 20.0 / a);
    prev = diff;
  }
}

TEST_CASE("newton_theta: two-branch root stays near pi/2 at large a") {
  const Angles root = newton_theta(1e6, Angles({kPi / 2.0}));
  CHECK(std::abs(root.at(1) - kPi / 2.0) <= 1e-4);
  CHECK(inf_norm(F_of(1e6, root)) <= 1e-12);
}

TEST_CASE("newton_theta: exact symmetric root is a fixed point") {
  const Angles ref = reference_angles(SpiralConfig(3, 2));
  const Angles root = newton_theta(5.0, ref);
  for (int k = 1; k <= 2; ++k) CHECK(root.at(k) == doctest::Approx(ref.at(k)).epsilon(1e-14));
}

TEST_CASE("newton_theta converges fast from the first-order predictor") {
  const SpiralConfig cfg(5, 1);
  const RVec tm1 = theta_minus1(cfg);
  const double a = 1e3;
  RVec init = reference_angles(cfg).values();
  for (std::size_t i = 0; i < init.size(); ++i) init[i] += tm1[i] / a;
  NewtonSettings settings;
  settings.max_iter = 5;  // must converge within a few steps
  const Angles root = newton_theta(a, Angles(init), settings);
  CHECK(inf_norm(F_of(a, root)) <= 1e-12);
}

TEST_CASE("newton_theta converges to one root from perturbed starts") {
  const double a = 1e5;
  const SpiralConfig cfg(3, 1);
  const Angles ref = reference_angles(cfg);
  RVec base;
  Rng rng(40);
  for (int trial = 0; trial < 6; ++trial) {
    RVec init = ref.values();
    for (auto& t : init) t += rng.uniform(-0.05, 0.05);
    const Angles root = newton_theta(a, Angles(init));
    if (base.empty()) {
      base = root.values();
    } else {
      for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(std::abs(root.values()[i] - base[i]) <= 1e-9);
    }
  }
}

TEST_CASE("continue_branch: two-branch family drifts monotonically off pi/2") {
  const Branch b = continue_branch(SpiralConfig(2, 1), 1e6, 10.0, 26);
  REQUIRE(b.complete);
  REQUIRE(b.samples.size() == 26);
  double prev_drift = -1.0;
  for (const auto& s : b.samples) {
    CHECK(s.residual <= 1e-10);
    const double drift = std::abs(s.theta.at(1) - kPi / 2.0);
    CHECK(drift >= prev_drift - 1e-12);  // drift grows as a falls
    prev_drift = drift;
    CHECK(s.in_U);
  }
  CHECK(b.samples.front().a == doctest::Approx(1e6));
  CHECK(b.samples.back().a == doctest::Approx(10.0));
}

TEST_CASE("continue_branch: symmetric family is constant with unit ratios") {
  const Branch b = continue_branch(SpiralConfig(3, 2), 1e4, 5.0, 12);
  REQUIRE(b.complete);
  const Angles ref = reference_angles(SpiralConfig(3, 2));
  for (const auto& s : b.samples) {
    for (int k = 1; k <= 2; ++k) CHECK(std::abs(s.theta.at(k) - ref.at(k)) < 1e-10);
    for (double gp : s.gprime) CHECK(std::abs(gp - 1.0) < 1e-12);
  }
  // first-order coefficients vanish on the constant branch
  CHECK(inf_norm(b.theta_minus1) < 1e-10);
  CHECK(inf_norm(b.g_minus1) < 1e-10);
}

TEST_CASE("continue_branch rejects even M >= 4") {
  CHECK_THROWS_AS(continue_branch(SpiralConfig(4, 1), 1e6, 1e2, 5), NondegeneracyFailure);
  CHECK_THROWS_AS(continue_branch(SpiralConfig(6, 1), 1e6, 1e2, 5), NondegeneracyFailure);
}

TEST_CASE("three-branch n = 1 continuation matches the first-order expansion") {
  const Branch& b = branch_3_1();
  REQUIRE(b.complete);
  REQUIRE(b.samples.size() == 41);
  const Angles ref = reference_angles(SpiralConfig(3, 1));
  const RVec& tm1 = b.theta_minus1;
  double err3 = -1.0, err4 = -1.0;
  for (const auto& s : b.samples) {
    CHECK(s.residual <= 1e-12);
    RVec scaled(s.theta.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
      scaled[i] = s.a * (s.theta.values()[i] - ref.values()[i]) - tm1[i];
    if (std::abs(s.a - 1e3) < 1e-6) err3 = norm2(scaled);
    if (std::abs(s.a - 1e4) < 1e-6) err4 = norm2(scaled);
  }
  REQUIRE(err3 >= 0.0);
  REQUIRE(err4 >= 0.0);
  CHECK(err3 / norm2(tm1) <= 0.05);
  CHECK(err3 / err4 >= 5.0);
  CHECK(err3 / err4 <= 20.0);
}

TEST_CASE("weight ratios follow their own first-order expansion") {
  const Branch& b = branch_3_1();
  const RVec& gm1 = b.g_minus1;
  for (const auto& s : b.samples) {
    if (std::abs(s.a - 1e3) > 1e-6 && std::abs(s.a - 1e4) > 1e-6) continue;
    for (std::size_t i = 0; i < s.gprime.size(); ++i) {
      const double lhs = s.a * (s.gprime[i] - 1.0);
      CHECK(std::abs(lhs - gm1[i]) <= 0.05 * std::abs(gm1[i]));
    }
  }
}

TEST_CASE("theta_minus1 for the two-branch family uses the difference oracle") {
  const RVec tm1 = theta_minus1(SpiralConfig(2, 1));
  REQUIRE(tm1.size() == 1);
  // Im(R+iI) = 0 at pi/2; the difference oracle carries an O(1/a) bias
  CHECK(std::abs(tm1[0]) < 1e-5);
  const Branch b = continue_branch(SpiralConfig(2, 1), 1e6, 1e4, 3);
  CHECK(b.theta_minus1_fd);
}

TEST_CASE("theta_minus1 is finite for the symmetric family and zero in the limit") {
  const RVec tm1 = theta_minus1(SpiralConfig(3, 2));
  for (double v : tm1) {
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) < 1e-10);
  }
}

TEST_CASE("solve_g0_mu: two-branch expansion constants") {
  const double a = 1e4;
  const Angles root = newton_theta(a, Angles({kPi / 2.0}));
  const CVec H = solve_gprime(a, root);
  const RVec gp = {H[0].real()};
  const EPair ep = solve_g0_mu(a, root, gp);
  CHECK(std::abs(ep.E1 - Complex(-2.0 * kPi, 0.0)) <= 1e-2);
  CHECK(std::abs(ep.E2 - Complex(0.0, 2.0)) <= 1e-2);
  CHECK(ep.g0 * 2.0 * kPi / a == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(ep.det2) > kLiTol);
}

TEST_CASE("E1 from the sum equals a cosh(pi A) for odd M") {
  Rng rng(33);
  for (int M : {3, 5, 7, 9}) {
    for (double a : {5.0, 100.0, 1e4}) {
      RVec th = reference_angles(SpiralConfig(M, 1)).values();
      for (auto& t : th) t += rng.uniform(-0.01, 0.01);
      const Angles angles(th);
      const Complex closed = a * std::cosh(kPi * mobius_A(a));
      CHECK(std::abs(E1_sum(a, angles) - closed) <= 1e-10 * std::abs(closed));
    }
  }
}

TEST_CASE("recovered weights satisfy the full discrete system") {
  const Branch& b = branch_3_1();
  for (const auto& s : b.samples) {
    if (s.a > 2e4) continue;  // the top decade is covered by the acceptance run
    const SpiralFamily fam = make_family(b.cfg, s);
    CHECK(fam.residual <= 1e-10);
    CHECK(std::abs(fam.g[0]) > 0.0);
  }
}

TEST_CASE("e2_expansion at the three-branch n = 1 point") {
  const E2Expansion e2 = e2_expansion(SpiralConfig(3, 1));
  CHECK(e2.E20 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  // Richardson check of E2(a) = E2_0 + E2_-1/a + o(1/a) along the branch
  const Branch& b = branch_3_1();
  Complex at3, at4;
  for (const auto& s : b.samples) {
    const Complex E2 = (Complex(0.0, 1.0) - 1.0 / s.a) * K_closed(s.a, s.theta);
    if (std::abs(s.a - 1e3) < 1e-6) at3 = s.a * (E2 - e2.E20);
    if (std::abs(s.a - 1e4) < 1e-6) at4 = s.a * (E2 - e2.E20);
  }
  const double err3 = std::abs(at3 - e2.E2m1), err4 = std::abs(at4 - e2.E2m1);
  CHECK(err3 / err4 == doctest::Approx(10.0).epsilon(0.5));
}

TEST_CASE("the second expansion coefficient keeps a nonzero imaginary part") {
  for (int M : {3, 5, 7, 9})
    for (int n : {1, 2})
      CHECK(std::abs(e2_expansion(SpiralConfig(M, n)).E2m1.imag()) > 1e-6);
}

TEST_CASE("prandtl_solve satisfies its equation and matches the 1x1 route") {
  for (double a : {10.0, 100.0, 1000.0}) {
    const PrandtlSolution p = prandtl_solve(a);
    CHECK(p.residual <= 1e-12);
    CHECK(p.g != 0.0);
    // same equation assembled through the full system with M = 1
    const Complex A = mobius_A(a);
    const Complex lhs = std::cosh(kPi * A) * p.g;
    const Complex rhs = -std::sinh(kPi * A) / (2.0 * a * a) *
                        (1.0 + a * a - 2.0 * p.mu * Complex(1.0, -a));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    SpiralFamily fam;
    fam.a = a;
    fam.mu = p.mu;
    fam.g = {p.g};
    CHECK(residual_eq_disc(fam)[0] <= 1e-12);
  }
}

TEST_CASE("residual_eq_disc: symmetric family with recovered constants") {
  const Branch b = continue_branch(SpiralConfig(3, 2), 100.0, 100.0, 1);
  REQUIRE(b.samples.size() == 1);
  const SpiralFamily fam = make_family(b.cfg, b.samples.front());
  CHECK(fam.residual <= 1e-12);
}

TEST_CASE("uniform weights at the n = 1 reference point never close the system") {
  // row sums differ, so the defect stays bounded away from zero for any mu
  const double a = 10.0;
  const SpiralConfig cfg(3, 1);
  SpiralFamily fam;
  fam.a = a;
  fam.mu = 0.3;
  fam.angles = reference_angles(cfg);
  fam.g = {1.0, 1.0, 1.0};
  const RVec defect = residual_eq_disc(fam);
  double worst = 0.0;
  for (double d : defect) worst = std::max(worst, d);
  const Nontriviality nt = nontriviality_check(3, a);
  CHECK(worst >= nt.min_pairwise_gap / 2.0 - 1e-12);
}

TEST_CASE("nontriviality_check: two routes agree and rows separate") {
  for (int M : {2, 3, 5}) {
    for (double a : {5.0, 10.0}) {
      const Nontriviality nt = nontriviality_check(M, a);
      CHECK(nt.max_rel_diff <= 1e-12);
      CHECK(nt.min_pairwise_gap > 0.0);
    }
  }
}
