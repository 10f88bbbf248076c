"""Dense matrix kernel shared by the structure, dynamics and oscillator code.

Everything here is a pure function of its arguments. Arrays are never
modified in place.
"""

import numpy as np
import scipy.linalg

from .errors import DimensionError, NonHermiteanError, SingularMatrixError

# Tolerance ladder: construction checks, derived identities, time evolution.
TOL_CONSTRUCT = 1e-12
TOL_DERIVED = 1e-10
TOL_EVOLVE = 1e-8

MAX_REAL_DIM = 128
MAX_FOCK_DIM = 64
SINGULAR_CONDITION = 1e14


def as_square(M, name="matrix"):
    """Return ``M`` as a finite square ndarray or raise."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] > MAX_REAL_DIM:
        raise DimensionError(
            f"{name} has dimension {M.shape[0]} > {MAX_REAL_DIM} (desk-scale cap)"
        )
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def check_same_shape(*mats):
    shapes = {np.shape(m) for m in mats}
    if len(shapes) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(shapes)}")


def frob(M):
    return float(np.linalg.norm(M))


def rel_residual(lhs, rhs):
    """Frobenius distance scaled by ``max(1, |lhs|, |rhs|)``."""
    scale = max(1.0, frob(lhs), frob(rhs))
    return frob(np.asarray(lhs) - np.asarray(rhs)) / scale


def is_hermitean(M, tol=TOL_CONSTRUCT):
    M = np.asarray(M)
    return frob(M - M.conj().T) <= tol * max(1.0, frob(M))


def require_hermitean(M, name="matrix", tol=TOL_CONSTRUCT):
    M = as_square(M, name)
    if not is_hermitean(M, tol):
        raise NonHermiteanError(
            f"{name} is not Hermitean (|M - M^H| = {frob(M - M.conj().T):.3e})"
        )
    return M


def mat_exp(M, hermitean=False):
    """Matrix exponential of a dense real or complex square matrix.

    Parameters
    ----------
    M : array_like
        Square matrix with finite entries.
    hermitean : bool, optional
        If True, ``M`` is taken to be Hermitean (or real symmetric) and the
        exponential is formed from its eigendecomposition, which returns an
        exactly Hermitean positive definite result.

    Returns
    -------
    ndarray
        ``exp(M)``, same dtype kind as the input.
    """
    M = as_square(M)
    if hermitean:
        w, V = np.linalg.eigh(M)
        E = (V * np.exp(w)) @ V.conj().T
        return E.real if np.isrealobj(M) else E
    # scaling-and-squaring with a Pade core
    return scipy.linalg.expm(M)


def is_positive_definite(S, tol=TOL_CONSTRUCT):
    """True iff ``S`` is symmetric within ``tol`` and every eigenvalue exceeds ``tol``."""
    S = as_square(S)
    scale = max(1.0, frob(S))
    if frob(S - S.T) > tol * scale:
        return False
    return bool(np.linalg.eigvalsh(0.5 * (S + S.T)).min() > tol)


def solve_or_invert(M):
    """Inverse of ``M``; raises `SingularMatrixError` if cond(M) > 1e14."""
    M = as_square(M)
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > SINGULAR_CONDITION:
        raise SingularMatrixError(
            f"matrix is singular to working precision (cond = {cond:.3e})", cond
        )
    return np.linalg.inv(M)


def commutator(A, B):
    return A @ B - B @ A


def random_hermitean(n, rng, scale=1.0):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (X + X.conj().T)


def random_symmetric(n, rng, scale=1.0):
    X = rng.standard_normal((n, n))
    return scale * 0.5 * (X + X.T)


def random_state(n, rng):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)
