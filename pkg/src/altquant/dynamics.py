"""Linear dynamics x' = A x: Hamiltonian decomposition, invariance, pictures.

Real-space evolution is always x' = A x and complex-space evolution is
always psi' = -i H psi; both use the exact propagator.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotHamiltonianError
from .numerics import (
    TOL_DERIVED,
    TOL_EVOLVE,
    as_square,
    check_same_shape,
    frob,
    mat_exp,
    require_hermitean,
    solve_or_invert,
)
from .realization import (
    realify_hamiltonian,
    realify_observable,
    realify_state,
)

HAMILTONIAN_SYMMETRY_TOL = 1e-9


def decompose_hamiltonian(A, C, tol=HAMILTONIAN_SYMMETRY_TOL):
    """Factor A = H C with H symmetric.

    Parameters
    ----------
    A : (2N, 2N) array_like
        Generator of the flow.
    C : (2N, 2N) array_like
        Invertible Poisson tensor.
    tol : float
        Relative tolerance on the asymmetry of A C^{-1}.

    Returns
    -------
    H : ndarray
        Symmetric matrix of the quadratic Hamiltonian f_H(x) = x^T H x / 2.

    Raises
    ------
    NotHamiltonianError
        If A C^{-1} is not symmetric, i.e. A is not Hamiltonian w.r.t. C.
    """
    A = as_square(np.asarray(A, dtype=float), "A")
    C = as_square(np.asarray(C, dtype=float), "C")
    check_same_shape(A, C)
    H = A @ solve_or_invert(C)
    asym = frob(H - H.T)
    if asym > tol * max(1.0, frob(H)):
        raise NotHamiltonianError(
            f"A is not Hamiltonian w.r.t. C: |H - H^T| = {asym:.3e}", asym
        )
    return 0.5 * (H + H.T)


@dataclass
class InvarianceReport:
    residuals: dict
    tol: float
    ok: dict = field(init=False)

    def __post_init__(self):
        self.ok = {k: bool(v <= self.tol) for k, v in self.residuals.items()}

    @property
    def symplectic_ok(self):
        return self.ok["symplectic"]

    @property
    def complex_ok(self):
        return self.ok["complex"]

    @property
    def metric_ok(self):
        return self.ok["metric"]

    @property
    def all_ok(self):
        return all(self.ok.values())

    def to_dict(self):
        return {
            k: {"ok": self.ok[k], "residual": self.residuals[k], "tol": self.tol}
            for k in self.residuals
        }


def check_invariance(A, triple, tol=TOL_DERIVED):
    """Residuals of the infinitesimal invariance conditions of ``triple`` under A.

    symplectic: |A^T Omega + Omega A|, complex: |A J - J A|,
    metric: |A^T s + s A|. Residuals are scaled by the size of the structure
    matrix so that transported (rescaled) triples are judged fairly.
    """
    A = as_square(np.asarray(A, dtype=float), "A")
    check_same_shape(A, triple.C)
    O, J, s = triple.omega, triple.J, triple.s
    residuals = {
        "symplectic": frob(A.T @ O + O @ A) / max(1.0, frob(O)),
        "complex": frob(A @ J - J @ A) / max(1.0, frob(J)),
        "metric": frob(A.T @ s + s @ A) / max(1.0, frob(s)),
    }
    return InvarianceReport(residuals, tol)


def flow_preservation(A, triple, t):
    """Relative residuals of e^{tA}^T M e^{tA} = M for M = s and M = Omega."""
    U = mat_exp(t * np.asarray(A, dtype=float))
    out = {}
    for name, M in (("metric", triple.s), ("symplectic", triple.omega)):
        out[name] = frob(U.T @ M @ U - M) / max(1.0, frob(M))
    return out


def evolve_schrodinger(A, x0, t):
    """x(t) = exp(t A) x0."""
    return mat_exp(t * np.asarray(A, dtype=float)) @ np.asarray(x0, dtype=float)


def propagator(H, t):
    """U = exp(-i H t) for Hermitean H."""
    H = require_hermitean(np.atleast_2d(np.asarray(H, dtype=complex)), "H")
    return mat_exp(-1j * t * H)


def evolve_heisenberg(H, B, t):
    """B(t) = U^H B U with U = exp(-i H t)."""
    U = propagator(H, t)
    B = np.asarray(B, dtype=complex)
    check_same_shape(U, B)
    return U.conj().T @ B @ U


def ehrenfest_check(H, B, psi0, t, tol=TOL_EVOLVE):
    """Compare an expectation value computed in two pictures.

    The Schroedinger side evolves the realified state under the real flow
    and evaluates the realified observable x^T Q x / 2. The Heisenberg side
    evolves the operator and takes <psi0|B(t)|psi0>.

    Returns
    -------
    ok : bool
    residual : float
        Absolute difference of the two expectation values.
    """
    H = require_hermitean(np.atleast_2d(np.asarray(H, dtype=complex)), "H")
    B = require_hermitean(np.atleast_2d(np.asarray(B, dtype=complex)), "B")
    psi0 = np.asarray(psi0, dtype=complex)
    x_t = evolve_schrodinger(realify_hamiltonian(H), realify_state(psi0), t)
    schrodinger = 0.5 * x_t @ realify_observable(B) @ x_t
    heisenberg = (psi0.conj() @ evolve_heisenberg(H, B, t) @ psi0).real
    residual = abs(schrodinger - heisenberg)
    return residual <= tol, float(residual)
