"""Deformed products A ._K B = A e^{lambda K} B and the structures they induce.

The map F_K(A) = e^{lambda K/2} A e^{lambda K/2} intertwines the deformed
product with the ordinary one, so every identity of the matrix algebra has
a K-deformed twin. A Hermitean K also defines the scalar product
<psi1|psi2>_K = <psi1| e^{lambda K} |psi2>.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NonHermiteanError
from .numerics import (
    TOL_CONSTRUCT,
    as_square,
    check_same_shape,
    commutator,
    frob,
    is_hermitean,
    mat_exp,
    rel_residual,
)
from .serialize import matrix_from_json, matrix_to_json


@dataclass(frozen=True, eq=False)
class DeformationOperator:
    """Pair (K, lambda).

    ``K`` is either a full Hermitean matrix or, with ``diagonal=True``, a
    1-d table K(n) of its diagonal in a preferred basis (the Fock case).
    Lambda is kept apart from K so that sweeps over lambda reuse one K.
    """

    K: np.ndarray
    lam: float
    diagonal: bool = False

    def __post_init__(self):
        K = np.asarray(self.K)
        if self.diagonal:
            K = np.asarray(K, dtype=float).ravel()
            if not np.all(np.isfinite(K)):
                raise ValueError("K table has non-finite entries")
        else:
            K = as_square(K, "K")
            if not is_hermitean(K, TOL_CONSTRUCT):
                raise NonHermiteanError("K must be Hermitean")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "lam", float(self.lam))

    @classmethod
    def from_exp_table(cls, values, lam=1.0):
        """Diagonal K from a table of exponentials e^{lambda K(n)} > 0."""
        values = np.asarray(values, dtype=float)
        if np.any(values <= 0):
            raise ValueError("exponential table must be strictly positive")
        return cls(np.log(values) / lam, lam, diagonal=True)

    @property
    def dim(self):
        return self.K.shape[0]

    def matrix(self):
        return np.diag(self.K) if self.diagonal else self.K

    def exp(self, scale=1.0):
        """e^{scale * lambda * K}."""
        if self.diagonal:
            return np.diag(np.exp(scale * self.lam * self.K))
        return mat_exp(scale * self.lam * self.K, hermitean=True)

    @cached_property
    def gram(self):
        return self.exp()

    @cached_property
    def half(self):
        return self.exp(0.5)

    def to_json(self):
        K = {"diag_fn": self.K.tolist()} if self.diagonal else matrix_to_json(self.K)
        return {"lambda": self.lam, "K": K}

    @classmethod
    def from_json(cls, doc):
        K = doc["K"]
        if isinstance(K, dict) and "diag_fn" in K:
            return cls(np.asarray(K["diag_fn"], dtype=float), doc["lambda"], True)
        return cls(matrix_from_json(K), doc["lambda"])


def _check(D, *mats):
    check_same_shape(*mats)
    if np.shape(mats[0])[0] != D.dim:
        raise ValueError(
            f"operand dimension {np.shape(mats[0])[0]} != K dimension {D.dim}"
        )


def kproduct(A, B, D):
    _check(D, A, B)
    return A @ D.gram @ B


def kbracket(A, B, D):
    """[A, B]_K = A e^{lambda K} B - B e^{lambda K} A."""
    _check(D, A, B)
    E = D.gram
    return A @ E @ B - B @ E @ A


def fk_map(A, D):
    _check(D, A)
    return D.half @ A @ D.half


def fk_inverse(A, D):
    """Inverse of `fk_map`, i.e. F_{-K}."""
    _check(D, A)
    Hi = D.exp(-0.5)
    return Hi @ A @ Hi


def kscalar(psi1, psi2, D):
    """<psi1|psi2>_K = <psi1| e^{lambda K/2} e^{lambda K/2} |psi2>."""
    psi1, psi2 = np.asarray(psi1), np.asarray(psi2)
    return complex(psi1.conj() @ (D.half @ (D.half @ psi2)))


def kmatrix_element(psi1, A, psi2, D):
    """<psi1|A|psi2>_K: A inserted between the two half-exponentials.

    Computed by deforming the states, <e^{lK/2} psi1| A |e^{lK/2} psi2>.
    """
    u = D.half @ np.asarray(psi1)
    v = D.half @ np.asarray(psi2)
    return complex(u.conj() @ (np.asarray(A) @ v))


def deformed_expectation(A, psi, D):
    """f_{A,K}(psi) = <psi|F_K(A)|psi> in the reference product."""
    psi = np.asarray(psi)
    return complex(psi.conj() @ fk_map(A, D) @ psi)


def is_constant_of_motion(K, H, tol=1e-10):
    """True iff |[K, H]| <= tol."""
    K, H = np.asarray(K), np.asarray(H)
    if K.ndim == 1:
        K = np.diag(K)
    return frob(commutator(K, H)) <= tol


def kscalar_conservation(D, H, psi0, times):
    """Largest drift of <psi(t)|psi(t)>_K along psi' = -i H psi over ``times``."""
    from .dynamics import propagator

    ref = kscalar(psi0, psi0, D).real
    drift = 0.0
    for t in times:
        psi = propagator(H, t) @ psi0
        drift = max(drift, abs(kscalar(psi, psi, D).real - ref))
    return drift / max(1.0, abs(ref))


def algebra_residuals(A, B, C, D):
    """Relative residuals of the deformed-algebra identities for one triple.

    Keys: associativity, distributivity, antisymmetry, jacobi, derivation,
    fk_assoc (F_K(A) F_K(B) = F_K(A ._K B)), fk_lie, fk_invertible.
    """
    P = lambda X, Y: kproduct(X, Y, D)  # noqa: E731
    Bk = lambda X, Y: kbracket(X, Y, D)  # noqa: E731
    F = lambda X: fk_map(X, D)  # noqa: E731
    cyc = [Bk(A, Bk(B, C)), Bk(B, Bk(C, A)), Bk(C, Bk(A, B))]
    return {
        "associativity": rel_residual(P(P(A, B), C), P(A, P(B, C))),
        "distributivity": rel_residual(P(A, B + C), P(A, B) + P(A, C)),
        "antisymmetry": rel_residual(Bk(A, B), -Bk(B, A)),
        "jacobi": frob(sum(cyc)) / max(1.0, max(frob(X) for X in cyc)),
        # [A, B ._K C]_K = [A, B]_K ._K C + B ._K [A, C]_K
        "derivation": rel_residual(
            Bk(A, P(B, C)), P(Bk(A, B), C) + P(B, Bk(A, C))
        ),
        "fk_assoc": rel_residual(F(A) @ F(B), F(P(A, B))),
        "fk_lie": rel_residual(commutator(F(A), F(B)), F(Bk(A, B))),
        "fk_invertible": rel_residual(fk_inverse(F(A), D), A),
    }
