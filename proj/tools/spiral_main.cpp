// spiral: verification suites, branch solving, table reproduction, scans and
// geometry export for logarithmic-spiral vortex-sheet families.
//
// Exit codes: 0 success, 1 check failure or runtime error, 2 invalid flags,
// 3 nondegeneracy failure. stderr carries diagnostics, stdout/--out data.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logspiral/asymptotics.hpp"
#include "logspiral/geometry.hpp"
#include "logspiral/linalg.hpp"
#include "logspiral/matrices.hpp"
#include "logspiral/model.hpp"
#include "logspiral/rng.hpp"
#include "logspiral/solver.hpp"

namespace ls = logspiral;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Output {
  std::string path;  // empty -> stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ls::Error("cannot open output file: " + path);
    f << text;
  }
};

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string suite;
  std::string name;
  double max_err;
  double tol;
  bool pass() const { return max_err <= tol; }
};

std::vector<CheckResult> verify_dets(std::uint64_t seed) {
  ls::Rng rng(seed);
  double worstB = 0.0, worstBl = 0.0;
  for (int it = 0; it < 200; ++it) {
    const int M = rng.uniform_int(2, 9);
    const double a = rng.uniform(0.5, 50.0);
    const ls::Angles th = rng.ordered_angles(M);
    const ls::Complex oracleB = ls::det_bruteforce(ls::build_B_and_b(a, th).B);
    const double relB = std::abs(ls::detB_closed(a, th) - oracleB) / std::abs(oracleB);
    worstB = std::max(worstB, relB);
    for (int l = 1; l < M; ++l) {
      const ls::Complex oracleBl = ls::det_bruteforce(ls::build_Bl(a, th, l));
      const double relBl =
          std::abs(ls::detBl_closed(a, th, l) - oracleBl) / std::abs(oracleBl);
      worstBl = std::max(worstBl, relBl);
    }
  }
  return {{"dets", "detB_closed_vs_oracle", worstB, 1e-9},
          {"dets", "detBl_closed_vs_oracle", worstBl, 1e-9}};
}

std::vector<CheckResult> verify_lu(std::uint64_t seed) {
  ls::Rng rng(seed + 1);
  double worstLU = 0.0, worstDet = 0.0, worstStruct = 0.0;
  for (int it = 0; it < 100; ++it) {
    const int M = rng.uniform_int(1, 8);
    const double a = rng.uniform(0.5, 50.0);
    const ls::Angles th = M == 1 ? ls::Angles() : rng.ordered_angles(M);
    const ls::CMat A = ls::build_A(a, th);
    const ls::LUFactors f = ls::lu_factor_A(a, th);
    const ls::CMat prod = f.L * f.U;
    double amax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) {
        amax = std::max(amax, std::abs(A(i, j)));
        dmax = std::max(dmax, std::abs(prod(i, j) - A(i, j)));
        if (j > i) worstStruct = std::max(worstStruct, std::abs(f.L(i, j)));
        if (i > j) worstStruct = std::max(worstStruct, std::abs(f.U(i, j)));
      }
    worstLU = std::max(worstLU, dmax / amax);
    const ls::Complex oracle = ls::det_bruteforce(A);
    worstDet = std::max(worstDet, std::abs(ls::detA_closed(a, th) - oracle) / std::abs(oracle));
  }
  return {{"lu", "LU_reproduces_A", worstLU, 1e-12},
          {"lu", "detA_closed_vs_oracle", worstDet, 1e-9},
          {"lu", "triangular_structure", worstStruct, 0.0}};
}

std::vector<CheckResult> verify_limits(std::uint64_t) {
  double worstOnes = 0.0;
  double worstK3 = 0.0;
  // reference ratio = ones for M = 2 (n = 1) and odd M <= 11
  for (int M : {2, 3, 5, 7, 9, 11}) {
    for (int n : {1, 2}) {
      if (M == 2 && n == 2) continue;  // limit denominator vanishes there
      const ls::LimitPack lp = ls::limit_pack(ls::reference_angles(ls::SpiralConfig(M, n)));
      for (const auto& h : lp.hbar_ratio)
        worstOnes = std::max(worstOnes, std::abs(h - ls::Complex(1.0, 0.0)));
      if (M % 2 == 1) {
        const double t1 = n * ls::kPi / M;
        const ls::Complex closed =
            ls::Complex(0.0, -2.0) * std::sin(2.0 * t1) /
            ((1.0 + std::exp(ls::Complex(0.0, -2.0 * t1))) *
             (1.0 + std::exp(ls::Complex(0.0, 2.0 * t1))));
        worstK3 = std::max(worstK3, std::abs(lp.kbar - closed));
      }
    }
  }
  // quotient-rule limits against the closed form (n = 1) and the central
  // difference oracle (both n)
  double worstRI = 0.0, worstFD = 0.0;
  for (int M : {3, 5, 7, 9}) {
    for (int n : {1, 2}) {
      const ls::Angles ref = ls::reference_angles(ls::SpiralConfig(M, n));
      const ls::DerivativeLimits dl = ls::derivative_limits(ref);
      if (n == 1)
        for (int l = 1; l < M; ++l)
          worstRI = std::max(worstRI,
                             std::abs(dl.RI[l - 1] - ls::ref_RI(ls::SpiralConfig(M, n), l)));
      const ls::CVec fd = ls::RI_fd(ref, 1e4);
      for (int l = 1; l < M; ++l) {
        const double scale = std::max(1.0, std::abs(dl.RI[l - 1]));
        worstFD = std::max(worstFD, std::abs(fd[l - 1] - dl.RI[l - 1]) / scale);
      }
    }
  }
  // convergence rate ||H(a) - Hbar|| ~ C/a at the n = 1 reference points
  double worstRate = 0.0;
  for (int M : {3, 5, 7}) {
    const ls::Angles ref = ls::reference_angles(ls::SpiralConfig(M, 1));
    const ls::LimitPack lp = ls::limit_pack(ref);
    double err[3];
    int i = 0;
    for (double a : {1e3, 1e4, 1e5}) {
      const ls::CVec H = ls::solve_gprime(a, ref);
      double e = 0.0;
      for (std::size_t k = 0; k < H.size(); ++k)
        e = std::max(e, std::abs(H[k] - lp.hbar_ratio[k]));
      err[i++] = e;
    }
    worstRate = std::max({worstRate, std::abs(err[0] / err[1] - 10.0),
                          std::abs(err[1] / err[2] - 10.0)});
  }
  return {{"limits", "reference_ratio_is_ones", worstOnes, 1e-12},
          {"limits", "K_limit_closed_form_odd_M", worstK3, 1e-13},
          {"limits", "RI_closed_form_n1", worstRI, 1e-12},
          {"limits", "RI_central_difference", worstFD, 2e-2},
          {"limits", "convergence_rate_1_over_a", worstRate, 2.0}};
}

std::vector<CheckResult> verify_gradients(std::uint64_t) {
  double worstF = 0.0, worstG = 0.0, worstEig = 0.0, worstC = 0.0;
  for (int M : {3, 5, 7, 9}) {
    for (int n : {1, 2}) {
      const ls::SpiralConfig cfg(M, n);
      const ls::GradPair g = ls::grad_bar(cfg);
      const ls::Angles ref = ls::reference_angles(cfg);
      const ls::RMat fdF = ls::gradF_general(ref);
      const ls::RMat fdG = ls::gradG_general(ref);
      for (std::size_t i = 0; i < fdF.rows(); ++i)
        for (std::size_t j = 0; j < fdF.cols(); ++j) {
          worstF = std::max(worstF, std::abs(g.F(i, j) - fdF(i, j)));
          worstG = std::max(worstG, std::abs(g.G(i, j) - fdG(i, j)));
        }
      const ls::RVec eig = ls::eigen_table(cfg);
      const ls::RVec ref_eig = ls::table2_reference(cfg);
      for (std::size_t i = 0; i < eig.size(); ++i)
        worstEig = std::max(worstEig, std::abs(eig[i] - ref_eig[i]));
      const ls::RMat C = ls::matrix_C(cfg);
      const double s1 = std::sin(n * ls::kPi / M);
      for (std::size_t i = 0; i < C.rows(); ++i)
        for (std::size_t j = 0; j < C.cols(); ++j)
          worstC = std::max(worstC, std::abs(C(i, j) - s1 * s1 * g.F(i, j)));
    }
  }
  return {{"gradients", "grad_bar_vs_central_difference_F", worstF, 1e-6},
          {"gradients", "grad_bar_vs_central_difference_G", worstG, 1e-6},
          {"gradients", "eigenvalues_vs_table", worstEig, 1e-10},
          {"gradients", "C_equals_scaled_gradF", worstC, 1e-13}};
}

std::vector<CheckResult> verify_evenM(std::uint64_t seed) {
  ls::Rng rng(seed + 2);
  double worstVanish = 0.0, worstAlex = 0.0, worstFormula = 0.0;
  for (int M : {4, 6, 8}) {
    for (int n : {1, 2}) {
      const ls::Complex kbar = ls::K_limit(ls::reference_angles(ls::SpiralConfig(M, n)));
      if (M == 2 * n) {
        // symmetric exception: the alternating series telescopes to M
        worstAlex = std::max(worstAlex, std::abs(kbar - ls::Complex(M, 0.0)));
      } else {
        worstVanish = std::max(worstVanish, std::abs(kbar));
      }
    }
    int done = 0;
    while (done < 50) {
      const ls::Angles th = rng.ordered_angles(M);
      const ls::SpiralConfig cfg(M, 1);
      const ls::EvenMFacts facts = ls::evenM_facts(cfg, th);
      if (!facts.have_residual) continue;
      ++done;
      for (double r : facts.f_formula_residual)
        worstFormula = std::max(worstFormula, std::abs(r));
    }
  }
  return {{"evenM", "K_limit_vanishes_at_reference", worstVanish, 1e-14},
          {"evenM", "K_limit_symmetric_exception", worstAlex, 1e-14},
          {"evenM", "F_limit_formula_residual", worstFormula, 1e-12}};
}

std::vector<CheckResult> verify_nontrivial(std::uint64_t) {
  double worstRel = 0.0, minGap = 1e300;
  for (int M : {2, 3, 5}) {
    for (double a : {5.0, 10.0}) {
      const ls::Nontriviality nt = ls::nontriviality_check(M, a);
      worstRel = std::max(worstRel, nt.max_rel_diff);
      minGap = std::min(minGap, nt.min_pairwise_gap);
    }
  }
  return {{"nontrivial", "two_route_row_sums", worstRel, 1e-12},
          {"nontrivial", "min_pairwise_gap_positive", minGap > 0.0 ? 0.0 : 1.0, 0.0}};
}

int run_verify(const std::string& suite, std::uint64_t seed, const Output& out) {
  std::vector<CheckResult> results;
  auto add = [&results](std::vector<CheckResult> r) {
    results.insert(results.end(), r.begin(), r.end());
  };
  if (suite == "dets" || suite == "all") add(verify_dets(seed));
  if (suite == "lu" || suite == "all") add(verify_lu(seed));
  if (suite == "limits" || suite == "all") add(verify_limits(seed));
  if (suite == "gradients" || suite == "all") add(verify_gradients(seed));
  if (suite == "evenM" || suite == "all") add(verify_evenM(seed));
  if (suite == "nontrivial" || suite == "all") add(verify_nontrivial(seed));
  if (results.empty()) throw CLI::ValidationError("verify", "unknown suite: " + suite);
  std::ostringstream os;
  os << "suite,check,status,max_error,tolerance\n";
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass();
    os << r.suite << ',' << r.name << ',' << (r.pass() ? "pass" : "FAIL") << ','
       << fmt17(r.max_err) << ',' << fmt17(r.tol) << '\n';
    std::cerr << (r.pass() ? "ok   " : "FAIL ") << r.suite << "/" << r.name
              << "  max_err=" << r.max_err << " tol=" << r.tol << "\n";
  }
  out.write(os.str());
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

void append_json_vector(std::ostringstream& os, const ls::RVec& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << fmt17(v[i]);
  os << ']';
}

std::string branch_to_json(const ls::Branch& b) {
  std::ostringstream os;
  os << "{\n  \"config\": {\"M\": " << b.cfg.M << ", \"n\": " << b.cfg.n << "},\n";
  os << "  \"samples\": [\n";
  for (std::size_t i = 0; i < b.samples.size(); ++i) {
    const auto& s = b.samples[i];
    os << "    {\"a\": " << fmt17(s.a) << ", \"theta\": ";
    append_json_vector(os, s.theta.values());
    ls::RVec g(1, s.g0);
    for (double gp : s.gprime) g.push_back(s.g0 * gp);
    os << ", \"g\": ";
    append_json_vector(os, g);
    os << ", \"mu\": " << fmt17(s.mu) << ", \"residual\": " << fmt17(s.residual)
       << ", \"in_U\": " << (s.in_U ? "true" : "false") << '}'
       << (i + 1 < b.samples.size() ? "," : "") << '\n';
  }
  os << "  ],\n  \"theta_minus1\": ";
  append_json_vector(os, b.theta_minus1);
  os << ",\n  \"G_minus1\": ";
  append_json_vector(os, b.g_minus1);
  os << ",\n  \"theta_minus1_fd\": " << (b.theta_minus1_fd ? "true" : "false");
  os << ",\n  \"complete\": " << (b.complete ? "true" : "false");
  if (!b.complete) {
    os << ",\n  \"stop_reason\": \"";
    for (char c : b.stop_reason) {
      if (c == '"' || c == '\\') os << '\\';
      os << c;
    }
    os << '"';
  }
  os << "\n}\n";
  return os.str();
}

int run_solve(int M, int n, double a, double a_end, int steps, double tol, const Output& out) {
  if (n >= 3)
    std::cerr << "warning: n >= 3 solves the discrete system but the angles leave (0, 2*pi); "
                 "samples are marked in_U = false where applicable\n";
  ls::NewtonSettings settings;
  settings.tol = tol;
  if (a_end <= 0.0) {
    a_end = a;
    steps = 1;
  } else if (steps <= 0) {
    // default grid resolution: 40 samples per decade of a
    steps = std::max(2, static_cast<int>(std::lround(40.0 * std::log10(a / a_end))) + 1);
  }
  const ls::Branch b =
      ls::continue_branch(ls::SpiralConfig(M, n), a, a_end, steps, settings);
  if (!b.complete)
    std::cerr << "warning: branch stopped early: " << b.stop_reason << "\n";
  bool any_outside = false;
  for (const auto& s : b.samples) any_outside = any_outside || !s.in_U;
  if (any_outside)
    std::cerr << "warning: some samples leave the physical box (0, 2*pi)^{M-1}\n";
  out.write(branch_to_json(b));
  return 0;
}

// ---------------------------------------------------------------------------
// tables, scans, expansion, prandtl, geometry
// ---------------------------------------------------------------------------

int run_table2(const std::string& format, const Output& out) {
  std::ostringstream os;
  if (format == "json") os << "[\n";
  else os << "M,n,index,computed,closed,abs_delta\n";
  bool first = true;
  for (int M : {3, 5, 7, 9})
    for (int n : {1, 2}) {
      const ls::RVec eig = ls::eigen_table(ls::SpiralConfig(M, n));
      const ls::RVec ref = ls::table2_reference(ls::SpiralConfig(M, n));
      for (std::size_t i = 0; i < eig.size(); ++i) {
        const double d = std::abs(eig[i] - ref[i]);
        if (format == "json") {
          os << (first ? "" : ",\n") << "  {\"M\": " << M << ", \"n\": " << n
             << ", \"index\": " << i << ", \"computed\": " << fmt17(eig[i])
             << ", \"closed\": " << fmt17(ref[i]) << ", \"abs_delta\": " << fmt17(d) << '}';
          first = false;
        } else {
          os << M << ',' << n << ',' << i << ',' << fmt17(eig[i]) << ',' << fmt17(ref[i])
             << ',' << fmt17(d) << '\n';
        }
      }
    }
  if (format == "json") os << "\n]\n";
  out.write(os.str());
  return 0;
}

int run_scan_c(int maxM, const std::string& format, const Output& out) {
  const auto rows = ls::scan_C(maxM);
  std::ostringstream os;
  if (format == "json") {
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << "  {\"M\": " << rows[i].M << ", \"n\": " << rows[i].n
         << ", \"det\": " << fmt17(rows[i].det)
         << ", \"sigma_min\": " << fmt17(rows[i].sigma_min) << '}'
         << (i + 1 < rows.size() ? "," : "") << '\n';
    os << "]\n";
  } else {
    os << "M,n,det,sigma_min\n";
    for (const auto& r : rows)
      os << r.M << ',' << r.n << ',' << fmt17(r.det) << ',' << fmt17(r.sigma_min) << '\n';
  }
  out.write(os.str());
  return 0;
}

int run_prandtl(double a, const std::string& format, const Output& out) {
  const ls::PrandtlSolution s = ls::prandtl_solve(a);
  std::ostringstream os;
  if (format == "json")
    os << "{\"a\": " << fmt17(a) << ", \"g\": " << fmt17(s.g) << ", \"mu\": " << fmt17(s.mu)
       << ", \"residual\": " << fmt17(s.residual) << "}\n";
  else
    os << "a,g,mu,residual\n"
       << fmt17(a) << ',' << fmt17(s.g) << ',' << fmt17(s.mu) << ',' << fmt17(s.residual)
       << '\n';
  out.write(os.str());
  return 0;
}

int run_expansion(int M, int n, const Output& out) {
  const ls::SpiralConfig cfg(M, n);
  const ls::RVec tm1 = ls::theta_minus1(cfg);
  const ls::RVec gm1 = ls::G_minus1(cfg);
  std::ostringstream os;
  os << "{\n  \"M\": " << M << ", \"n\": " << n << ",\n  \"theta_minus1\": ";
  append_json_vector(os, tm1);
  os << ",\n  \"theta_minus1_fd\": " << (M == 2 ? "true" : "false");
  os << ",\n  \"G_minus1\": ";
  append_json_vector(os, gm1);
  if (M >= 3 && M % 2 == 1) {
    const ls::E2Expansion e2 = ls::e2_expansion(cfg);
    os << ",\n  \"E2_0\": " << fmt17(e2.E20) << ",\n  \"E2_minus1\": {\"re\": "
       << fmt17(e2.E2m1.real()) << ", \"im\": " << fmt17(e2.E2m1.imag()) << '}'
       << ",\n  \"im_E2_minus1_nonzero\": "
       << (std::abs(e2.E2m1.imag()) > 1e-6 ? "true" : "false");
  }
  os << "\n}\n";
  out.write(os.str());
  return 0;
}

int run_geometry(int M, int n, double a, double t, double turns, int npoints, double tol,
                 const Output& out) {
  ls::SpiralFamily fam;
  if (M == 1) {
    const ls::PrandtlSolution p = ls::prandtl_solve(a);
    fam.a = a;
    fam.mu = p.mu;
    fam.g = {p.g};
    fam.in_U = true;
    fam.residual = ls::residual_eq_disc(fam)[0];
  } else {
    ls::NewtonSettings settings;
    settings.tol = tol;
    const ls::Branch b = ls::continue_branch(ls::SpiralConfig(M, n), a, a, 1, settings);
    if (b.samples.empty()) throw ls::Error("geometry: branch solve failed: " + b.stop_reason);
    fam = ls::make_family(b.cfg, b.samples.front());
  }
  std::ostringstream os;
  os << "m,theta,t,re_z,im_z,Gamma,gamma_density\n";
  for (int m = 0; m < M; ++m) {
    double lo, hi;
    ls::default_theta_range(fam, m, turns, lo, hi);
    for (const auto& s : ls::sample_spiral(fam, m, t, lo, hi, npoints))
      os << s.m << ',' << fmt17(s.theta) << ',' << fmt17(s.t) << ',' << fmt17(s.z.real())
         << ',' << fmt17(s.z.imag()) << ',' << fmt17(s.gamma_cum) << ','
         << fmt17(s.gamma_density) << '\n';
  }
  out.write(os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logarithmic-spiral vortex sheet solver and verifier"};
  app.require_subcommand(1);

  std::string out_path, format = "csv", suite = "all";
  int M = 3, n = 1, steps = 0, npoints = 400, maxM = 51;
  double a = 1e6, a_end = -1.0, tol = 1e-12, t = 1.0, turns = 3.0;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "dets|lu|limits|gradients|evenM|nontrivial|all")
      ->check(CLI::IsMember({"dets", "lu", "limits", "gradients", "evenM", "nontrivial", "all"}));
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--out", out_path, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "trace a branch in decreasing a");
  solve->add_option("--M", M, "number of branches")->required();
  solve->add_option("--n", n, "reference family index")->required();
  solve->add_option("--a", a, "start (largest) tightness")->required();
  solve->add_option("--a-end", a_end, "end tightness (omit for a single point)");
  auto* steps_opt = solve->add_option("--steps", steps, "number of samples (default 40 per decade)");
  solve->add_option("--tol", tol, "Newton residual tolerance");
  solve->add_option("--out", out_path, "output file (default stdout)");

  auto* table2 = app.add_subcommand("table2", "eigenvalues of the scaled limit gradient");
  table2->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  table2->add_option("--out", out_path, "output file");

  auto* scanc = app.add_subcommand("scan-c", "invertibility scan of the nondegeneracy matrix");
  scanc->add_option("--max-M", maxM, "largest odd M");
  scanc->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  scanc->add_option("--out", out_path, "output file");

  auto* prandtl = app.add_subcommand("prandtl", "single-branch spiral coefficients");
  prandtl->add_option("--a", a, "tightness")->required();
  prandtl->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  prandtl->add_option("--out", out_path, "output file");

  auto* expansion = app.add_subcommand("expansion", "asymptotic expansion coefficients");
  expansion->add_option("--M", M, "number of branches")->required();
  expansion->add_option("--n", n, "reference family index")->required();
  expansion->add_option("--out", out_path, "output file");

  auto* geometry = app.add_subcommand("geometry", "export spiral point samples");
  geometry->add_option("--M", M, "number of branches")->required();
  geometry->add_option("--n", n, "reference family index");
  geometry->add_option("--a", a, "tightness")->required();
  geometry->add_option("--t", t, "time");
  geometry->add_option("--turns", turns, "outward turns to export");
  geometry->add_option("--npoints", npoints, "points per branch");
  geometry->add_option("--tol", tol, "Newton residual tolerance");
  geometry->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const Output out{out_path};
  try {
    if (verify->parsed()) return run_verify(suite, seed, out);
    if (solve->parsed()) {
      if (steps_opt->count() == 0) steps = 0;
      return run_solve(M, n, a, a_end, steps, tol, out);
    }
    if (table2->parsed()) return run_table2(format, out);
    if (scanc->parsed()) return run_scan_c(maxM, format, out);
    if (prandtl->parsed()) return run_prandtl(a, format, out);
    if (expansion->parsed()) return run_expansion(M, n, out);
    if (geometry->parsed()) return run_geometry(M, n, a, t, turns, npoints, tol, out);
  } catch (const ls::NondegeneracyFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
