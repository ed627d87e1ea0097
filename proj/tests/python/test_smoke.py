"""Smoke tests for the python surface of the core module."""

import cmath
import math

import pytest

import logspiral as ls


def test_mobius_factor():
    assert abs(ls.mobius_A(1.0) - (-1 - 1j)) < 1e-15
    assert abs(ls.mobius_A(1e6) + 2j) <= 2e-6


def test_reference_angles_and_admissibility():
    th = ls.reference_angles(5, 1)
    assert th == pytest.approx([k * math.pi / 5 for k in range(1, 5)])
    assert ls.is_admissible(th)
    assert not ls.is_admissible(ls.reference_angles(4, 1))


def test_determinant_identity_on_one_instance():
    a, th = 3.0, [0.9, 2.0, 4.0]
    B, b = ls.build_B_and_b(a, th)
    oracle = ls.det_bruteforce(B)
    assert abs(ls.detB_closed(a, th) - oracle) <= 1e-10 * abs(oracle)


def test_lu_reproduces_matrix():
    a, th = 2.0, [1.0, 2.5]
    L, U = ls.lu_factor_A(a, th)
    A = ls.build_A(a, th)
    n = len(A)
    for i in range(n):
        for j in range(n):
            prod = sum(L[i][k] * U[k][j] for k in range(n))
            assert abs(prod - A[i][j]) < 1e-12


def test_symmetric_branch_is_exact():
    th = ls.reference_angles(3, 2)
    H = ls.solve_gprime(50.0, th)
    assert all(abs(h - 1.0) < 1e-12 for h in H)
    branch = ls.continue_branch(3, 2, 1000.0, 10.0, 5)
    assert branch["complete"]
    for s in branch["samples"]:
        assert s["residual"] <= 1e-11
        assert s["gprime"] == pytest.approx([1.0, 1.0], abs=1e-11)


def test_nonsymmetric_branch_first_order():
    branch = ls.continue_branch(3, 1, 1e5, 1e3, 9)
    assert branch["complete"]
    tm1 = branch["theta_minus1"]
    ref = ls.reference_angles(3, 1)
    s = branch["samples"][-1]  # a = 1e3
    scaled = [s["a"] * (t - r) for t, r in zip(s["theta"], ref)]
    assert scaled == pytest.approx(tm1, abs=0.05 * max(abs(x) for x in tm1))


def test_prandtl_residual():
    out = ls.prandtl_solve(100.0)
    assert out["residual"] <= 1e-12
    assert out["g"] != 0.0


def test_eigen_table_against_closed_forms():
    for M, n in [(3, 1), (5, 2), (9, 1)]:
        eig = ls.eigen_table(M, n)
        ref = ls.table2_reference(M, n)
        assert eig == pytest.approx(ref, abs=1e-10)


def test_degenerate_reference_rejected():
    with pytest.raises(ArithmeticError):
        ls.solve_gprime(1e6, ls.reference_angles(4, 1))
    with pytest.raises(ArithmeticError):
        ls.continue_branch(4, 1, 1e6, 1e2, 3)


def test_velocity_profile_rotation_symmetry():
    th = ls.reference_angles(3, 2)
    branch = ls.continue_branch(3, 2, 20.0, 20.0, 1)
    s = branch["samples"][0]
    g = [s["g0"]] + [s["g0"] * gp for gp in s["gprime"]]
    rot = cmath.exp(2j * math.pi / 3)
    z = 1.3 + 0.4j
    v = ls.velocity_profile(s["a"], s["mu"], th, g, z)
    vr = ls.velocity_profile(s["a"], s["mu"], th, g, rot * z)
    assert not v["near_sheet"] and not vr["near_sheet"]
    assert abs(vr["w"] - rot * v["w"]) < 1e-10


def test_sampling_modulus_law():
    pts = ls.sample_spiral(2.0, 0.6, [1.0], [0.5, 0.7], 0, 1.0, 0.0, 2 * math.pi, 9)
    assert abs(pts[-1]["z"]) / abs(pts[0]["z"]) == pytest.approx(
        math.exp(4 * math.pi), rel=1e-12
    )
