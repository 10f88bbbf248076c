import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from altquant.dynamics import evolve_schrodinger, propagator
from altquant.errors import NonHermiteanError
from altquant.numerics import random_hermitean, random_state
from altquant.realization import (
    complexify_generator,
    complexify_state,
    one_level_energy,
    one_level_trajectory,
    realify_hamiltonian,
    realify_observable,
    realify_state,
)
from altquant.structures import standard_triple

from conftest import rk4

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_realify_state_one_level():
    np.testing.assert_allclose(realify_state([(1 + 1j) / np.sqrt(2)]), [1.0, 1.0])
    np.testing.assert_array_equal(realify_state([0j]), [0.0, 0.0])


def test_norm_relation(rng):
    psi = random_state(4, rng)
    x = realify_state(psi)
    q, p = x[:4], x[4:]
    direct = sum(abs(c) ** 2 for c in psi)
    assert np.isclose(direct, (q @ q + p @ p) / 2, rtol=1e-14)


@settings(max_examples=50, deadline=None)
@given(re=arrays(float, st.integers(1, 16), elements=finite))
def test_round_trip(re):
    psi = re + 1j * re[::-1]
    np.testing.assert_allclose(complexify_state(realify_state(psi)), psi, atol=1e-12)
    x = realify_state(psi)
    np.testing.assert_allclose(realify_state(complexify_state(x)), x, atol=1e-12)


def test_one_level_generator():
    w = 1.7
    np.testing.assert_array_equal(realify_hamiltonian([[w]]), [[0.0, w], [-w, 0.0]])
    np.testing.assert_array_equal(realify_hamiltonian(np.zeros((2, 2))), np.zeros((4, 4)))


def test_realify_rejects_non_hermitean():
    with pytest.raises(NonHermiteanError):
        realify_hamiltonian([[0, 1], [0, 0]])
    with pytest.raises(NonHermiteanError):
        realify_observable([[1j]])


def test_dual_evolution_diagonal(rng):
    H = np.diag([0.8, 2.3])
    psi0 = random_state(2, rng)
    for t in (0.3, 1.0, 4.0):
        complex_route = np.exp(-1j * np.diag(H) * t) * psi0
        real_route = evolve_schrodinger(realify_hamiltonian(H), realify_state(psi0), t)
        np.testing.assert_allclose(realify_state(complex_route), real_route, atol=1e-10)


def test_real_flow_matches_rk4(rng):
    H = random_hermitean(3, rng)
    A = realify_hamiltonian(H)
    x0 = realify_state(random_state(3, rng))
    oracle = rk4(lambda x: A @ x, x0, 1.0, 2000)
    np.testing.assert_allclose(evolve_schrodinger(A, x0, 1.0), oracle, atol=1e-9)


def test_observable_identity_and_zero():
    np.testing.assert_array_equal(realify_observable(np.eye(3)), np.eye(6))
    np.testing.assert_array_equal(realify_observable(np.zeros((2, 2))), np.zeros((4, 4)))


def test_observable_sampled(rng):
    B = random_hermitean(3, rng)
    Q = realify_observable(B)
    np.testing.assert_array_equal(Q, Q.T)
    for _ in range(100):
        psi = random_state(3, rng)
        x = realify_state(psi)
        lhs = (psi.conj() @ B @ psi).real
        assert abs(lhs - 0.5 * x @ Q @ x) <= 1e-12 * max(1, abs(lhs))


def test_generator_commutes_with_J0(rng):
    for n in (1, 2, 5):
        A = realify_hamiltonian(random_hermitean(n, rng))
        J0 = standard_triple(n).J
        np.testing.assert_allclose(A @ J0, J0 @ A, atol=1e-14)


def test_generator_round_trip(rng):
    H = random_hermitean(4, rng)
    np.testing.assert_allclose(complexify_generator(realify_hamiltonian(H)), H)


def test_norm_conservation(rng):
    H = random_hermitean(4, rng)
    A = realify_hamiltonian(H)
    x0 = realify_state(random_state(4, rng))
    for t in np.linspace(0, 10, 11):
        x = evolve_schrodinger(A, x0, t)
        assert abs(x @ x - x0 @ x0) <= 1e-10 * (x0 @ x0)


def test_complex_propagator_is_unitary(rng):
    U = propagator(random_hermitean(4, rng), 2.5)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-12)


def test_one_level_trajectory_cases():
    assert one_level_trajectory(0.0, 0.3, -0.2, 5.0) == (0.3, -0.2)
    q, p = one_level_trajectory(1.0, 1.0, 0.0, np.pi / 2)
    assert abs(q) < 1e-15 and abs(p + 1) < 1e-15


def test_one_level_rk4_cross_check():
    w, q0, p0, t = 1.3, 0.4, -0.9, 2.0
    oracle = rk4(lambda y: np.array([w * y[1], -w * y[0]]), [q0, p0], t, 4000)
    np.testing.assert_allclose(one_level_trajectory(w, q0, p0, t), oracle, atol=1e-12)


def test_one_level_finite_difference_and_energy():
    w, dt = 1.0, 1e-3
    ts = np.arange(0, 10, dt)
    q, p = one_level_trajectory(w, 0.6, 0.8, ts)
    fd = (q[2:] - 2 * q[1:-1] + q[:-2]) / dt**2 + w**2 * q[1:-1]
    assert np.max(np.abs(fd)) <= 1e-6
    E = one_level_energy(w, q, p)
    assert np.max(np.abs(E - E[0])) <= 1e-10
