import numpy as np
import pytest

from altquant.alternatives import oscillator_generator
from altquant.dynamics import (
    check_invariance,
    decompose_hamiltonian,
    ehrenfest_check,
    evolve_heisenberg,
    evolve_schrodinger,
    flow_preservation,
)
from altquant.errors import NonHermiteanError, NotHamiltonianError
from altquant.numerics import random_hermitean, random_state, random_symmetric
from altquant.oscillator import build_fock
from altquant.realization import realify_hamiltonian
from altquant.structures import standard_triple

from conftest import rk4

C0 = standard_triple(1).C


def test_decompose_oscillator():
    A = oscillator_generator(1.0)
    H = decompose_hamiltonian(A, C0)
    np.testing.assert_allclose(H, np.eye(2))
    np.testing.assert_allclose(H @ C0, A)


def test_decompose_zero():
    np.testing.assert_array_equal(decompose_hamiltonian(np.zeros((2, 2)), C0), np.zeros((2, 2)))


def test_decompose_rejects_non_hamiltonian():
    with pytest.raises(NotHamiltonianError):
        decompose_hamiltonian(np.eye(2), C0)


def test_decompose_round_trip_general_C(rng):
    X = rng.standard_normal((6, 6))
    C = X - X.T + 3 * standard_triple(3).C
    H = random_symmetric(6, rng)
    A = H @ C
    H2 = decompose_hamiltonian(A, C)
    np.testing.assert_allclose(H2 @ C, A, atol=1e-10 * np.linalg.norm(A))


def test_invariance_oscillator():
    rep = check_invariance(oscillator_generator(1.3), standard_triple(1))
    assert rep.symplectic_ok and rep.complex_ok and rep.metric_ok


def test_invariance_pure_scaling_breaks_symplectic():
    rep = check_invariance(np.eye(2), standard_triple(1))
    assert not rep.symplectic_ok
    assert rep.complex_ok
    assert not rep.metric_ok


def test_invariance_zero():
    assert check_invariance(np.zeros((4, 4)), standard_triple(2)).all_ok


def test_invariance_report_json():
    d = check_invariance(oscillator_generator(), standard_triple(1)).to_dict()
    assert set(d) == {"symplectic", "complex", "metric"}
    assert set(d["metric"]) == {"ok", "residual", "tol"}


def test_invariance_implies_preservation(rng):
    for _ in range(5):
        A = realify_hamiltonian(random_hermitean(3, rng))
        tr = standard_triple(3)
        assert check_invariance(A, tr).all_ok
        for t in np.linspace(0, 10, 6):
            res = flow_preservation(A, tr, t)
            assert max(res.values()) <= 1e-8


def test_schrodinger_cases(rng):
    A = oscillator_generator(1.0)
    np.testing.assert_array_equal(evolve_schrodinger(A, [0.3, 0.1], 0.0), [0.3, 0.1])
    np.testing.assert_allclose(evolve_schrodinger(A, [1.0, 0.0], np.pi / 2), [0.0, -1.0], atol=1e-15)
    B = rng.standard_normal((4, 4))
    x0 = rng.standard_normal(4)
    two = evolve_schrodinger(B, evolve_schrodinger(B, x0, 0.4), 0.7)
    np.testing.assert_allclose(two, evolve_schrodinger(B, x0, 1.1), atol=1e-10)


def test_schrodinger_matches_rk4(rng):
    B = 0.5 * rng.standard_normal((4, 4))
    x0 = rng.standard_normal(4)
    np.testing.assert_allclose(evolve_schrodinger(B, x0, 2.0), rk4(lambda x: B @ x, x0, 2.0, 4000), atol=1e-10)


def test_heisenberg_conserves_hamiltonian(rng):
    H = random_hermitean(4, rng)
    np.testing.assert_allclose(evolve_heisenberg(H, H, 3.0), H, atol=1e-12)
    f = np.diag(rng.standard_normal(4))
    Hd = np.diag(rng.standard_normal(4))
    np.testing.assert_allclose(evolve_heisenberg(Hd, f, 2.0), f, atol=1e-12)


def test_heisenberg_spectrum_preserved(rng):
    H, B = random_hermitean(5, rng), random_hermitean(5, rng)
    np.testing.assert_allclose(
        np.linalg.eigvalsh(evolve_heisenberg(H, B, 1.7)), np.linalg.eigvalsh(B), atol=1e-12
    )


def test_heisenberg_matches_rk4(rng):
    """i dB/dt = [B, H] integrated directly."""
    H, B = random_hermitean(3, rng), random_hermitean(3, rng)
    oracle = rk4(lambda X: -1j * (X @ H - H @ X), B.astype(complex), 1.0, 2000)
    np.testing.assert_allclose(evolve_heisenberg(H, B, 1.0), oracle, atol=1e-9)


def test_heisenberg_oscillator_phase():
    lad = build_fock(8)
    H = lad.hamiltonian
    for t in np.linspace(0, 5, 11):
        at = evolve_heisenberg(H, lad.a, t)
        np.testing.assert_allclose(at[:7, :7], np.exp(-1j * t) * lad.a[:7, :7], atol=1e-8)


def test_heisenberg_rejects_non_hermitean():
    with pytest.raises(NonHermiteanError):
        evolve_heisenberg(np.array([[0, 1], [0, 0]]), np.eye(2), 1.0)


def test_ehrenfest_trivial(rng):
    H, B = random_hermitean(3, rng), random_hermitean(3, rng)
    ok, res = ehrenfest_check(H, B, random_state(3, rng), 0.0)
    assert ok and res <= 1e-12


def test_ehrenfest_commuting_constant(rng):
    H = np.diag([0.3, 1.1, 2.0])
    B = np.diag([1.0, -1.0, 0.5])
    psi = random_state(3, rng)
    vals = [(psi.conj() @ evolve_heisenberg(H, B, t) @ psi).real for t in np.linspace(0, 5, 6)]
    np.testing.assert_allclose(vals, vals[0], atol=1e-12)


@pytest.mark.parametrize("t", [0.1, 1.0, 5.0])
def test_ehrenfest_random(rng, t):
    H, B = random_hermitean(6, rng), random_hermitean(6, rng)
    psi = random_state(6, rng)
    psi /= np.linalg.norm(psi)
    ok, res = ehrenfest_check(H, B, psi, t)
    assert ok and res <= 1e-8
