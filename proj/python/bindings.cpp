#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logspiral/asymptotics.hpp"
#include "logspiral/geometry.hpp"
#include "logspiral/matrices.hpp"
#include "logspiral/model.hpp"
#include "logspiral/solver.hpp"

namespace py = pybind11;
using namespace logspiral;

namespace {

template <class T>
std::vector<std::vector<T>> to_rows(const Matrix<T>& m) {
  std::vector<std::vector<T>> out(m.rows(), std::vector<T>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

CMat from_rows(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  CMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SpiralFamily make_family_py(double a, double mu, const RVec& theta, const RVec& g) {
  SpiralFamily fam;
  fam.a = a;
  fam.mu = mu;
  fam.angles = Angles(theta);
  fam.g = g;
  fam.in_U = fam.angles.in_U();
  return fam;
}

py::dict branch_to_dict(const Branch& b) {
  py::list samples;
  for (const auto& s : b.samples) {
    py::dict d;
    d["a"] = s.a;
    d["theta"] = s.theta.values();
    d["gprime"] = s.gprime;
    d["g0"] = s.g0;
    d["mu"] = s.mu;
    d["residual"] = s.residual;
    d["in_U"] = s.in_U;
    samples.append(d);
  }
  py::dict out;
  out["M"] = b.cfg.M;
  out["n"] = b.cfg.n;
  out["samples"] = samples;
  out["theta_minus1"] = b.theta_minus1;
  out["G_minus1"] = b.g_minus1;
  out["theta_minus1_fd"] = b.theta_minus1_fd;
  out["complete"] = b.complete;
  out["stop_reason"] = b.stop_reason;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nonsymmetric logarithmic-spiral vortex sheets: matrices, limits, "
            "continuation and geometry";

  py::register_exception<DegenerateSystem>(m, "DegenerateSystemError", PyExc_ArithmeticError);
  py::register_exception<NondegeneracyFailure>(m, "NondegeneracyError", PyExc_ArithmeticError);
  py::register_exception<NoConvergence>(m, "NoConvergenceError", PyExc_RuntimeError);

  m.def("mobius_A", &mobius_A, py::arg("a"), "Moebius factor A(a) = -2ai/(a+i)");
  m.def(
      "reference_angles",
      [](int M, int n) { return reference_angles(SpiralConfig(M, n)).values(); },
      py::arg("M"), py::arg("n"), "Offsets k*n*pi/M for k = 1..M-1");
  m.def(
      "scalar_pack",
      [](double a, const RVec& th) {
        const ScalarPack p = scalar_pack(a, Angles(th));
        py::dict d;
        d["r"] = p.r;
        d["rk"] = p.rk;
        d["c"] = p.c;
        d["s"] = p.s;
        return d;
      },
      py::arg("a"), py::arg("theta"));

  m.def(
      "build_A", [](double a, const RVec& th) { return to_rows(build_A(a, Angles(th))); },
      py::arg("a"), py::arg("theta"));
  m.def(
      "build_B_and_b",
      [](double a, const RVec& th) {
        const SystemMatrices sys = build_B_and_b(a, Angles(th));
        return py::make_tuple(to_rows(sys.B), sys.b);
      },
      py::arg("a"), py::arg("theta"));
  m.def(
      "K_closed", [](double a, const RVec& th) { return K_closed(a, Angles(th)); },
      py::arg("a"), py::arg("theta"));
  m.def(
      "H_closed", [](double a, const RVec& th, int l) { return H_closed(a, Angles(th), l); },
      py::arg("a"), py::arg("theta"), py::arg("l"));
  m.def(
      "det_bruteforce",
      [](const std::vector<std::vector<Complex>>& rows) {
        return det_bruteforce(from_rows(rows));
      },
      py::arg("matrix"));
  m.def(
      "detB_closed", [](double a, const RVec& th) { return detB_closed(a, Angles(th)); },
      py::arg("a"), py::arg("theta"));
  m.def(
      "detBl_closed",
      [](double a, const RVec& th, int l) { return detBl_closed(a, Angles(th), l); },
      py::arg("a"), py::arg("theta"), py::arg("l"));
  m.def(
      "detA_closed", [](double a, const RVec& th) { return detA_closed(a, Angles(th)); },
      py::arg("a"), py::arg("theta"));
  m.def(
      "lu_factor_A",
      [](double a, const RVec& th) {
        const LUFactors f = lu_factor_A(a, Angles(th));
        return py::make_tuple(to_rows(f.L), to_rows(f.U));
      },
      py::arg("a"), py::arg("theta"));
  m.def(
      "solve_gprime", [](double a, const RVec& th) { return solve_gprime(a, Angles(th)); },
      py::arg("a"), py::arg("theta"));

  m.def(
      "limit_pack",
      [](const RVec& th) {
        const LimitPack p = limit_pack(Angles(th));
        py::dict d;
        d["kbar"] = p.kbar;
        d["hbar"] = p.hbar;
        d["admissible"] = p.admissible;
        d["hbar_ratio"] = p.hbar_ratio;
        d["fbar"] = p.fbar;
        d["gbar"] = p.gbar;
        return d;
      },
      py::arg("theta"));
  m.def(
      "is_admissible", [](const RVec& th) { return is_admissible(Angles(th)); },
      py::arg("theta"));
  m.def(
      "derivative_limits",
      [](const RVec& th) {
        const DerivativeLimits d = derivative_limits(Angles(th));
        py::dict out;
        out["dK"] = d.dK;
        out["dH"] = d.dH;
        if (d.has_RI)
          out["RI"] = d.RI;
        else
          out["RI"] = py::none();
        return out;
      },
      py::arg("theta"));
  m.def(
      "ref_RI", [](int M, int n, int l) { return ref_RI(SpiralConfig(M, n), l); },
      py::arg("M"), py::arg("n"), py::arg("l"));
  m.def(
      "grad_bar",
      [](int M, int n) {
        const GradPair g = grad_bar(SpiralConfig(M, n));
        return py::make_tuple(to_rows(g.F), to_rows(g.G));
      },
      py::arg("M"), py::arg("n"));
  m.def(
      "gradF_general", [](const RVec& th) { return to_rows(gradF_general(Angles(th))); },
      py::arg("theta"));
  m.def(
      "matrix_C", [](int M, int n) { return to_rows(matrix_C(SpiralConfig(M, n))); },
      py::arg("M"), py::arg("n"));
  m.def(
      "scan_C",
      [](int maxM) {
        py::list out;
        for (const CScanRow& r : scan_C(maxM))
          out.append(py::make_tuple(r.M, r.n, r.det, r.sigma_min));
        return out;
      },
      py::arg("max_M") = 51);
  m.def(
      "eigen_table", [](int M, int n) { return eigen_table(SpiralConfig(M, n)); },
      py::arg("M"), py::arg("n"));
  m.def(
      "table2_reference", [](int M, int n) { return table2_reference(SpiralConfig(M, n)); },
      py::arg("M"), py::arg("n"));
  m.def(
      "evenM_facts",
      [](int M, int n, const RVec& th) {
        const EvenMFacts f = evenM_facts(SpiralConfig(M, n), Angles(th));
        py::dict d;
        d["kbar_at_ref"] = f.kbar_at_ref;
        if (f.have_residual)
          d["f_formula_residual"] = f.f_formula_residual;
        else
          d["f_formula_residual"] = py::none();
        return d;
      },
      py::arg("M"), py::arg("n"), py::arg("theta"));

  m.def(
      "F_of", [](double a, const RVec& th) { return F_of(a, Angles(th)); }, py::arg("a"),
      py::arg("theta"));
  m.def(
      "analytic_jacobian",
      [](double a, const RVec& th) { return to_rows(analytic_jacobian(a, Angles(th))); },
      py::arg("a"), py::arg("theta"));
  m.def(
      "newton_theta",
      [](double a, const RVec& init, double tol, int max_iter) {
        NewtonSettings s;
        s.tol = tol;
        s.max_iter = max_iter;
        return newton_theta(a, Angles(init), s).values();
      },
      py::arg("a"), py::arg("theta_init"), py::arg("tol") = 1e-12, py::arg("max_iter") = 50);
  m.def(
      "continue_branch",
      [](int M, int n, double a_start, double a_end, int steps, double tol) {
        NewtonSettings s;
        s.tol = tol;
        return branch_to_dict(continue_branch(SpiralConfig(M, n), a_start, a_end, steps, s));
      },
      py::arg("M"), py::arg("n"), py::arg("a_start") = 1e6, py::arg("a_end") = 1e2,
      py::arg("steps") = 41, py::arg("tol") = 1e-12);
  m.def(
      "theta_minus1", [](int M, int n) { return theta_minus1(SpiralConfig(M, n)); },
      py::arg("M"), py::arg("n"));
  m.def(
      "G_minus1", [](int M, int n) { return G_minus1(SpiralConfig(M, n)); }, py::arg("M"),
      py::arg("n"));
  m.def(
      "solve_g0_mu",
      [](double a, const RVec& th, const RVec& gprime) {
        const EPair e = solve_g0_mu(a, Angles(th), gprime);
        py::dict d;
        d["E1"] = e.E1;
        d["E2"] = e.E2;
        d["det2"] = e.det2;
        d["g0"] = e.g0;
        d["mu"] = e.mu;
        return d;
      },
      py::arg("a"), py::arg("theta"), py::arg("gprime"));
  m.def(
      "e2_expansion",
      [](int M, int n) {
        const E2Expansion e = e2_expansion(SpiralConfig(M, n));
        return py::make_tuple(e.E20, e.E2m1);
      },
      py::arg("M"), py::arg("n"));
  m.def(
      "prandtl_solve",
      [](double a) {
        const PrandtlSolution p = prandtl_solve(a);
        py::dict d;
        d["g"] = p.g;
        d["mu"] = p.mu;
        d["residual"] = p.residual;
        return d;
      },
      py::arg("a"));
  m.def(
      "residual_eq_disc",
      [](double a, double mu, const RVec& th, const RVec& g) {
        return residual_eq_disc(make_family_py(a, mu, th, g));
      },
      py::arg("a"), py::arg("mu"), py::arg("theta"), py::arg("g"));
  m.def(
      "nontriviality_check",
      [](int M, double a) {
        const Nontriviality nt = nontriviality_check(M, a);
        py::dict d;
        d["row_direct"] = nt.row_direct;
        d["row_closed"] = nt.row_closed;
        d["max_rel_diff"] = nt.max_rel_diff;
        d["min_pairwise_gap"] = nt.min_pairwise_gap;
        return d;
      },
      py::arg("M"), py::arg("a"));

  m.def("winding_number", &winding_number, py::arg("r"), py::arg("theta"),
        py::arg("theta_k"), py::arg("a"));
  m.def(
      "velocity_profile",
      [](double a, double mu, const RVec& th, const RVec& g, Complex z, double exclusion) {
        const ProfileValue v = velocity_profile(make_family_py(a, mu, th, g), z, exclusion);
        py::dict d;
        d["w"] = v.w;
        d["near_sheet"] = v.near_sheet;
        d["min_rel_dist"] = v.min_rel_dist;
        return d;
      },
      py::arg("a"), py::arg("mu"), py::arg("theta"), py::arg("g"), py::arg("z"),
      py::arg("exclusion") = 1e-8);
  m.def(
      "sample_spiral",
      [](double a, double mu, const RVec& th, const RVec& g, int branch, double t, double lo,
         double hi, int npoints) {
        py::list out;
        for (const SpiralSample& s :
             sample_spiral(make_family_py(a, mu, th, g), branch, t, lo, hi, npoints)) {
          py::dict d;
          d["m"] = s.m;
          d["theta"] = s.theta;
          d["t"] = s.t;
          d["z"] = s.z;
          d["Gamma"] = s.gamma_cum;
          d["gamma_density"] = s.gamma_density;
          out.append(d);
        }
        return out;
      },
      py::arg("a"), py::arg("mu"), py::arg("theta"), py::arg("g"), py::arg("m"),
      py::arg("t"), py::arg("theta_lo"), py::arg("theta_hi"), py::arg("npoints"));
}
