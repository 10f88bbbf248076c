"""Poisson tensors, symplectic forms, complex structures and metrics.

Conventions (q-then-p block ordering):

* C0 = [[0, I], [-I, 0]], so {q_i, p_j} = delta_ij,
* J0 = [[0, -I], [I, 0]], multiplication by i on realified states,
* s0 = C0 J0 = identity.

A quadratic observable stores its Hessian Q and evaluates to x^T Q x / 2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, IncompatibleStructureError
from .numerics import (
    TOL_CONSTRUCT,
    TOL_DERIVED,
    as_square,
    check_same_shape,
    frob,
    solve_or_invert,
)


def _scale(M):
    return max(1.0, frob(M))


def check_poisson_tensor(C, tol=TOL_CONSTRUCT):
    """Validate antisymmetry and invertibility; return C as a float array."""
    C = as_square(np.asarray(C, dtype=float), "C")
    if C.shape[0] % 2:
        raise DimensionError("Poisson tensor must have even dimension")
    res = frob(C + C.T)
    if res > tol * _scale(C):
        raise IncompatibleStructureError(
            "antisymmetry", f"C^T != -C (residual {res:.3e})", res
        )
    return C


def check_complex_structure(J, tol=TOL_CONSTRUCT):
    J = as_square(np.asarray(J, dtype=float), "J")
    res = frob(J @ J + np.eye(J.shape[0]))
    if res > tol * _scale(J) ** 2:
        raise IncompatibleStructureError(
            "complex_structure", f"J^2 != -1 (residual {res:.3e})", res
        )
    return J


def symplectic_from_poisson(C):
    """Symplectic form Omega with Omega C = identity."""
    C = check_poisson_tensor(C)
    Omega = solve_or_invert(C)
    # exact antisymmetry; inversion leaves O(eps) noise
    return 0.5 * (Omega - Omega.T)


@dataclass(frozen=True, eq=False)
class StructureTriple:
    """Poisson tensor, complex structure and metric of one Hilbert-space structure.

    Build through `standard_triple` or `assemble_triple`; both validate
    compatibility. ``omega`` is the inverse of ``C``.
    """

    C: np.ndarray
    J: np.ndarray
    s: np.ndarray
    omega: np.ndarray

    @property
    def dim(self):
        return self.C.shape[0]

    @property
    def h(self):
        """Hermitean form as the complex matrix s + i Omega."""
        return self.s + 1j * self.omega

    def hermitean_form(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return complex(x @ self.s @ y, x @ self.omega @ y)

    def to_dict(self):
        from .serialize import matrix_to_json

        return {
            "C": matrix_to_json(self.C),
            "J": matrix_to_json(self.J),
            "s": matrix_to_json(self.s),
            "omega": matrix_to_json(self.omega),
        }


def standard_triple(N):
    if N < 1:
        raise ValueError("N must be >= 1")
    if 2 * N > 128:
        raise DimensionError(f"2N = {2 * N} exceeds the cap of 128")
    I, Z = np.eye(N), np.zeros((N, N))
    C0 = np.block([[Z, I], [-I, Z]])
    J0 = np.block([[Z, -I], [I, Z]])
    return StructureTriple(C=C0, J=J0, s=C0 @ J0, omega=-C0)


def assemble_triple(C, J, tol=TOL_CONSTRUCT):
    """Build the triple (C, J, s = CJ) and check compatibility.

    Raises `IncompatibleStructureError` naming the first failed predicate:
    ``antisymmetry`` or ``complex_structure`` for invalid inputs, then
    ``symmetry`` or ``positivity`` for s.
    """
    C = check_poisson_tensor(C, tol)
    J = check_complex_structure(J, tol)
    check_same_shape(C, J)
    s = C @ J
    asym = frob(s - s.T)
    if asym > tol * _scale(s):
        raise IncompatibleStructureError(
            "symmetry", f"s = CJ is not symmetric (residual {asym:.3e})", asym
        )
    s = 0.5 * (s + s.T)
    lam_min = float(np.linalg.eigvalsh(s).min())
    if lam_min <= tol * _scale(s):
        raise IncompatibleStructureError(
            "positivity",
            f"s = CJ is not positive definite (min eigenvalue {lam_min:.3e})",
            lam_min,
        )
    return StructureTriple(C=C, J=J, s=s, omega=symplectic_from_poisson(C))


def validate_triple(triple, tol=TOL_CONSTRUCT):
    """Residuals of the triple axioms; raises if any exceeds ``tol``."""
    n = triple.dim
    res = {
        "J2": frob(triple.J @ triple.J + np.eye(n)),
        "C_antisym": frob(triple.C + triple.C.T),
        "s_eq_CJ": frob(triple.s - triple.C @ triple.J),
        "omega_C": frob(triple.omega @ triple.C - np.eye(n)),
    }
    bad = [k for k, v in res.items() if v > tol * _scale(triple.s)]
    if bad:
        raise IncompatibleStructureError(bad[0], f"residual {res[bad[0]]:.3e}")
    return res


@dataclass(frozen=True, eq=False)
class QuadraticObservable:
    """f(x) = x^T Q x / 2 with symmetric Q (the Hessian of f)."""

    Q: np.ndarray

    def __post_init__(self):
        Q = as_square(np.asarray(self.Q, dtype=float), "Q")
        if frob(Q - Q.T) > TOL_CONSTRUCT * _scale(Q):
            raise IncompatibleStructureError("symmetry", "Q must be symmetric")
        object.__setattr__(self, "Q", 0.5 * (Q + Q.T))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * x @ self.Q @ x

    def gradient(self, x):
        return self.Q @ np.asarray(x, dtype=float)

    @classmethod
    def from_function(cls, f, dim):
        """Recover the Hessian of a quadratic form by polarization.

        Exact (up to rounding) when ``f`` is homogeneous quadratic.
        """
        E = np.eye(dim)
        diag = np.array([f(E[i]) for i in range(dim)])
        Q = np.diag(2 * diag)
        for i in range(dim):
            for j in range(i + 1, dim):
                Q[i, j] = Q[j, i] = f(E[i] + E[j]) - diag[i] - diag[j]
        return cls(Q)


def matrix_lie_product_C(B1, B2, C):
    """[B1, B2]_C = B1 C B2 - B2 C B1."""
    check_same_shape(B1, B2, C)
    B1, B2, C = (np.asarray(M) for M in (B1, B2, C))
    return B1 @ C @ B2 - B2 @ C @ B1


def poisson_bracket_quadratics(f, g, C):
    """{f, g} for quadratic observables under {x_i, x_j} = C_ij.

    The Hessian of the bracket is the C-Lie product of the Hessians.
    """
    C = check_poisson_tensor(C, TOL_DERIVED)
    M = matrix_lie_product_C(f.Q, g.Q, C)
    return QuadraticObservable(0.5 * (M + M.T))


def poisson_bracket_pointwise(f, g, C, x):
    """Gradient formula (df C dg - dg C df)/2 evaluated at one point."""
    df, dg = f.gradient(x), g.gradient(x)
    return 0.5 * (df @ C @ dg - dg @ C @ df)
