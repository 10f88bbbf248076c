"""Complex wave functions as real (q, p) points.

A state psi in C^N maps to x = (q_1..q_N, p_1..p_N) in R^{2N} through
psi_k = (q_k + i p_k) / sqrt(2). Under this map the Schroedinger equation
psi' = -i H psi becomes the linear flow x' = A x, and expectation values
<psi|B|psi> become quadratic functions x^T Q x / 2.

Planck's constant is 1 throughout.
"""

import numpy as np

from .numerics import as_square, require_hermitean

SQRT2 = np.sqrt(2.0)


def realify_state(psi):
    """Map psi in C^N to (q, p) stacked as one real vector of length 2N."""
    psi = np.atleast_1d(np.asarray(psi, dtype=complex))
    return SQRT2 * np.concatenate([psi.real, psi.imag])


def complexify_state(x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size % 2:
        raise ValueError(f"real point must have even length, got shape {x.shape}")
    n = x.size // 2
    return (x[:n] + 1j * x[n:]) / SQRT2


def realify_hamiltonian(H):
    """Real generator A with psi' = -i H psi  <=>  x' = A x.

    For H = H_R + i H_I the result is the block matrix
    ``[[H_I, H_R], [-H_R, H_I]]``.
    """
    H = require_hermitean(np.atleast_2d(np.asarray(H, dtype=complex)), "H")
    HR, HI = H.real, H.imag
    return np.block([[HI, HR], [-HR, HI]])


def realify_observable(B):
    """Symmetric Q with <psi|B|psi> = x^T Q x / 2.

    For B = B_R + i B_I this is ``[[B_R, -B_I], [B_I, B_R]]``.
    """
    B = require_hermitean(np.atleast_2d(np.asarray(B, dtype=complex)), "B")
    BR, BI = B.real, B.imag
    return np.block([[BR, -BI], [BI, BR]])


def complexify_generator(A):
    """Inverse of `realify_hamiltonian` for generators commuting with J0."""
    A = as_square(np.asarray(A, dtype=float), "A")
    n = A.shape[0] // 2
    HI, HR = A[:n, :n], A[:n, n:]
    return HR + 1j * HI


def one_level_trajectory(omega, q0, p0, t):
    """Closed-form solution of q' = omega p, p' = -omega q.

    ``t`` may be a scalar or an array; (q, p) come back with the same shape.
    """
    t = np.asarray(t, dtype=float)
    c, s = np.cos(omega * t), np.sin(omega * t)
    return q0 * c + p0 * s, -q0 * s + p0 * c


def one_level_energy(omega, q, p):
    return omega * (np.square(p) / 2 + np.square(q) / 2)
