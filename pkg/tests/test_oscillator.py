import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altquant.errors import DimensionError, PositivityError, SingularModeError
from altquant.oscillator import (
    KTable,
    build_f_oscillator,
    build_fock,
    dual_scalar_products,
    f_from_K,
    fk_ladder_residual,
    kcommutator_closed_form,
    kcommutator_fock,
    parity_structure,
    solve_alternative_hamiltonian,
    solve_standard_commutation,
)
from altquant.serialize import table_from_json


def double_factorial(k):
    return math.prod(range(k, 0, -2))


@pytest.mark.parametrize("D", [2, 5, 12])
def test_fock_commutator_interior(D):
    lad = build_fock(D)
    M = lad.a @ lad.a_dag - lad.a_dag @ lad.a
    np.testing.assert_allclose(M[: D - 1, : D - 1], np.eye(D - 1), atol=1e-14)
    assert M[-1, -1] == pytest.approx(-(D - 1))
    np.testing.assert_allclose(np.diag(lad.n_hat), np.arange(D), atol=1e-14)


@pytest.mark.parametrize("D", [1, 65])
def test_fock_dimension_limits(D):
    with pytest.raises(DimensionError):
        build_fock(D)


def test_kcommutator_closed_form(rng):
    E = rng.uniform(0.5, 2.0, 10)
    M = kcommutator_fock(build_fock(10), E)
    assert np.linalg.norm(M - np.diag(np.diag(M))) <= 1e-14
    np.testing.assert_allclose(np.diag(M)[:9], kcommutator_closed_form(E, 10), atol=1e-13)


def test_trivial_table_is_standard():
    E = np.ones(8)
    np.testing.assert_allclose(kcommutator_closed_form(E, 8), np.ones(7))


@pytest.mark.parametrize("eps", [0.0, 0.3, -0.5, 2.0])
def test_recurrence_gives_unit_commutator(eps):
    D = 16
    kt = solve_standard_commutation(eps, D)
    M = kcommutator_fock(build_fock(D), kt)
    np.testing.assert_allclose(M[: D - 1, : D - 1], np.eye(D - 1), atol=1e-12)


@pytest.mark.parametrize("eps", [0.3, -0.5, 2.0])
def test_recurrence_closed_form(eps):
    kt = solve_standard_commutation(eps, 20)
    for n in range(20):
        if n % 2:
            expected = 1.0
        else:
            s = n // 2
            expected = 1 + double_factorial(2 * s - 1) / double_factorial(2 * s) * eps
        assert kt.values[n] == pytest.approx(expected, abs=1e-13)
    par = parity_structure(kt)
    assert par["odd_trivial"] and par["even_deformed"]


def test_recurrence_zero_epsilon():
    kt = solve_standard_commutation(0.0, 10)
    np.testing.assert_allclose(kt.values, 1.0, atol=1e-15)
    assert parity_structure(kt)["trivial_modes"] == list(range(10))


def test_recurrence_positivity():
    with pytest.raises(PositivityError):
        solve_standard_commutation(-1.0, 6)


def test_ktable_rejects_nonpositive():
    with pytest.raises(PositivityError) as exc:
        KTable([1.0, -0.1, 2.0])
    assert list(exc.value.modes) == [1]


def test_alternative_trivial():
    lad = build_fock(8)
    sol = solve_alternative_hamiltonian(lad, np.arange(8) + 0.5)
    np.testing.assert_allclose(sol.table, 1.0)
    assert sol.ok and sol.singular_modes == []


def test_alternative_sinh():
    lad = build_fock(16)
    h = table_from_json({"name": "sinh", "lambda": 0.5}, 16, kind="htilde")
    sol = solve_alternative_hamiltonian(lad, h)
    assert sol.singular_modes == [0]
    assert np.isnan(sol.table[0])
    assert sol.ok
    with pytest.raises(SingularModeError):
        solve_alternative_hamiltonian(lad, h, strict=True)
    d = sol.to_dict()
    assert d["table"][0] is None


def test_alternative_negative_table():
    with pytest.raises(PositivityError):
        solve_alternative_hamiltonian(build_fock(4), [-1.0, 1.0, 1.0, 1.0])


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(0.2, 5.0), min_size=10, max_size=10))
def test_alternative_any_positive_htilde(h):
    sol = solve_alternative_hamiltonian(build_fock(10), h)
    assert sol.ok


def test_f_from_K_matches_deformed_ladder(rng):
    kt = solve_standard_commutation(0.4, 12)
    assert fk_ladder_residual(kt, 12) <= 1e-13
    f = f_from_K(kt, 12)
    assert f[0] == 1.0
    np.testing.assert_allclose(f[1:], np.sqrt(kt.values[:-1] * kt.values[1:]))
    E = rng.uniform(0.5, 2, 9)
    assert fk_ladder_residual(E, 9) <= 1e-13


def test_identity_f_is_standard():
    fo = build_f_oscillator(np.ones(10), 10)
    np.testing.assert_allclose(fo.phi, 1.0)
    rep = fo.commutator_report()
    assert rep["interior_residual"] <= 1e-14 and rep["offdiag_residual"] <= 1e-14


@pytest.mark.parametrize("lam", [0.0, 0.2, 1.5])
def test_affine_phi(lam):
    D = 16
    fo = build_f_oscillator(table_from_json({"name": "affine", "lambda": lam}, D), D)
    n = np.arange(D - 1)
    # (n+1)(1 + lam(n+1)) - n(1 + lam n)
    np.testing.assert_allclose(fo.phi, 1 + lam * (2 * n + 1), atol=1e-12)
    assert fo.commutator_report()["interior_residual"] <= 1e-12
    np.testing.assert_allclose(np.diag(fo.A_dag @ fo.A), fo.F, atol=1e-12)


def test_commutator_trace_zero(rng):
    fo = build_f_oscillator(rng.uniform(0.1, 2, 9), 9)
    assert abs(fo.commutator_report()["trace"]) <= 1e-12


def test_q_oscillator_profile():
    D, lam = 12, 0.3
    fo = build_f_oscillator(table_from_json({"name": "sinh", "lambda": lam}, D), D)
    n = np.arange(D)
    np.testing.assert_allclose(fo.F[1:], np.sinh(lam * n[1:]) / np.sinh(lam), atol=1e-12)


def test_invariant_blocks():
    f = np.ones(10)
    f[3] = 0.0
    fo = build_f_oscillator(f, 10)
    blk = fo.invariant_blocks()
    assert blk["zeros"] == [3]
    assert blk["blocks"] == [[0, 1, 2], list(range(3, 10))]
    assert blk["coupling"] == 0.0
    assert build_f_oscillator(np.ones(5), 5).invariant_blocks()["blocks"] == [list(range(5))]


@pytest.mark.parametrize("t", [0.0, 0.7, 3.0])
def test_heisenberg_phase(rng, t):
    fo = build_f_oscillator(rng.uniform(0.5, 2, 8), 8)
    assert fo.heisenberg_residual(t) <= 1e-12


def test_dual_scalar_products():
    lam = 0.2
    D = 10
    f = table_from_json({"name": "affine", "lambda": lam}, D)
    fo = build_f_oscillator(f, D)
    dg = dual_scalar_products(fo)
    assert max(dg.residuals.values()) <= 1e-10
    norms = [math.prod(1 + lam * k for k in range(1, n + 1)) for n in range(D)]
    np.testing.assert_allclose(np.diag(dg.gram_h1), norms, rtol=1e-12)
    np.testing.assert_allclose(dg.metric_h2 @ dg.gram_h1, np.eye(D), atol=1e-10)
    # literal commutator in the h2 basis is still diag(phi) on the interior
    np.testing.assert_allclose(dg.commutator_h2[: D - 1, : D - 1], np.diag(fo.phi), atol=1e-10)


def test_dual_requires_nonzero_f():
    f = np.ones(6)
    f[2] = 0
    fo = build_f_oscillator(f, 6)
    with pytest.raises(ValueError):
        dual_scalar_products(fo)
    assert dual_scalar_products(fo, n_max=1).residuals["creation_is_standard"] <= 1e-14
