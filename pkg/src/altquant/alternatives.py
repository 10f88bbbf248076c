"""Alternative quantum descriptions obtained by transporting structures.

Given A = H C with a compatible (C, J, s), any invertible T commuting with A
carries the description to

    H_T = T^{-1} H T^{-T},  C_T = T^T C T,  J_T = T^{-1} J T,  s_T = T^T s T,

which again satisfies A = H_T C_T, [J_T, A] = 0 and C_T J_T = s_T. When T
is not unitary the new Hermitean structure differs from the old one.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .dynamics import check_invariance, decompose_hamiltonian
from .errors import IncompatibleStructureError, NotHamiltonianError, SingularMatrixError
from .numerics import (
    SINGULAR_CONDITION,
    TOL_DERIVED,
    as_square,
    is_positive_definite,
    frob,
    rel_residual,
    solve_or_invert,
)
from .serialize import matrix_to_json
from .structures import StructureTriple, standard_triple

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9
TRANSPORT_TOL = 1e-9
ALTERNATIVE_DISTANCE = 1e-6


@dataclass(frozen=True, eq=False)
class SymmetryTransformation:
    T: np.ndarray
    source: str  # "power" | "commutant" | "user"
    exponent: int | None = None

    @property
    def label(self):
        if self.source == "power":
            return f"A^{self.exponent}"
        return self.source


def symmetry_residual(T, A):
    """|T^{-1} A T - A| relative to |A|."""
    T = np.asarray(T, dtype=float)
    return rel_residual(solve_or_invert(T) @ A @ T, A)


def as_symmetry(T, A, source="user", tol=SYMMETRY_TOL):
    T = as_square(np.asarray(T, dtype=float), "T")
    res = symmetry_residual(T, A)
    if res > tol:
        raise ValueError(f"T is not a symmetry of A (residual {res:.3e})")
    return SymmetryTransformation(T, source)


def symmetry_powers(A, max_power):
    """Powers A^0 .. A^max_power that are invertible.

    Near-singular powers (condition number above 1e14) are skipped and a
    note is logged; the identity A^0 is always present.
    """
    A = as_square(np.asarray(A, dtype=float), "A")
    if max_power > 2 * A.shape[0]:
        raise ValueError(
            f"max_power {max_power} exceeds 2 * dim = {2 * A.shape[0]}"
        )
    out = []
    P = np.eye(A.shape[0])
    for k in range(max_power + 1):
        if k:
            P = P @ A
        cond = np.linalg.cond(P)
        if not np.isfinite(cond) or cond > SINGULAR_CONDITION:
            log.info("skipping A^%d: singular (cond = %.3e)", k, cond)
            continue
        out.append(SymmetryTransformation(P.copy(), "power", k))
    return out


def commutant_basis(A, rtol=1e-10):
    """Basis of {T : T A = A T}, from the null space of the Sylvester map.

    For A with a degenerate spectrum this is larger than the span of the
    powers of A.
    """
    A = as_square(np.asarray(A, dtype=float), "A")
    n = A.shape[0]
    I = np.eye(n)
    # row-major vec: vec(AT - TA) = (A kron I - I kron A^T) vec(T)
    L = np.kron(A, I) - np.kron(I, A.T)
    basis = scipy.linalg.null_space(L, rcond=rtol)
    return [basis[:, k].reshape(n, n) for k in range(basis.shape[1])]


@dataclass
class AlternativeDescription:
    triple: StructureTriple
    H: np.ndarray
    unitary: bool
    residuals: dict
    tol: float = TRANSPORT_TOL
    label: str = ""
    distance: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(v <= self.tol for v in self.residuals.values())

    @property
    def genuinely_alternative(self):
        """Scale-normalized s_T or Omega_T differs from the original."""
        return max(self.distance.get("s_normalized", 0.0),
                   self.distance.get("omega_normalized", 0.0)) > ALTERNATIVE_DISTANCE

    def to_dict(self):
        return {
            "label": self.label,
            "unitary": bool(self.unitary),
            "genuinely_alternative": bool(self.genuinely_alternative),
            "H_T": matrix_to_json(self.H),
            "triple": self.triple.to_dict(),
            "relations": {
                k: {"residual": v, "tol": self.tol, "ok": bool(v <= self.tol)}
                for k, v in self.residuals.items()
            },
            "distance": self.distance,
        }


def transported_triple(T, triple):
    """(C_T, J_T, s_T, Omega_T) without any compatibility checks."""
    T = np.asarray(T, dtype=float)
    Ti = solve_or_invert(T)
    C_T = T.T @ triple.C @ T
    J_T = Ti @ triple.J @ T
    s_T = T.T @ triple.s @ T
    return StructureTriple(
        C=0.5 * (C_T - C_T.T),
        J=J_T,
        s=0.5 * (s_T + s_T.T),
        omega=Ti @ triple.omega @ Ti.T,
    )


def _normalized(M):
    return M / max(frob(M), np.finfo(float).tiny)


def transport(T, A, triple, H=None, tol=TRANSPORT_TOL):
    """Carry (H, C, J, s) along the symmetry T and verify the relations.

    Parameters
    ----------
    T : SymmetryTransformation or array_like
    A : array_like
        Generator with A = H C.
    triple : StructureTriple
    H : array_like, optional
        Hamiltonian matrix; recomputed from A and C if omitted.

    Raises
    ------
    IncompatibleStructureError
        Naming the first transported relation that fails (``1_T``, ``2_T``,
        ``J_T^2``, ``3_T``, or ``positivity``).
    """
    if not isinstance(T, SymmetryTransformation):
        T = as_symmetry(T, A)
    A = np.asarray(A, dtype=float)
    if H is None:
        H = decompose_hamiltonian(A, triple.C)
    Tm = T.T
    Ti = solve_or_invert(Tm)
    H_T = Ti @ H @ Ti.T
    H_T = 0.5 * (H_T + H_T.T)
    new = transported_triple(Tm, triple)
    n = A.shape[0]
    residuals = {
        "1_T": rel_residual(H_T @ new.C, A),
        "2_T": rel_residual(new.J @ A, A @ new.J),
        "J_T^2": rel_residual(new.J @ new.J, -np.eye(n)),
        "3_T": rel_residual(new.C @ new.J, new.s),
    }
    for name, r in residuals.items():
        if r > tol:
            raise IncompatibleStructureError(
                name, f"relation {name} violated after transport (residual {r:.3e})", r
            )
    if not is_positive_definite(new.s):
        raise IncompatibleStructureError("positivity", "s_T is not positive definite")
    distance = {
        "s": frob(new.s - triple.s),
        "omega": frob(new.omega - triple.omega),
        "s_normalized": frob(_normalized(new.s) - _normalized(triple.s)),
        "omega_normalized": frob(
            _normalized(new.omega) - _normalized(triple.omega)
        ),
    }
    return AlternativeDescription(
        triple=new,
        H=H_T,
        unitary=is_unitary_wrt(Tm, triple),
        residuals=residuals,
        tol=tol,
        label=T.label,
        distance=distance,
    )


def is_unitary_wrt(T, triple, tol=TOL_DERIVED):
    """True iff T^T s T = s and T^T Omega T = Omega within ``tol`` (relative)."""
    if isinstance(T, SymmetryTransformation):
        T = T.T
    T = np.asarray(T, dtype=float)
    return (
        rel_residual(T.T @ triple.s @ T, triple.s) <= tol
        and rel_residual(T.T @ triple.omega @ T, triple.omega) <= tol
    )


@dataclass
class PowerReport:
    exponent: int
    decomposable: bool
    symmetric_residual: float
    antisymmetric_residual: float
    singular: bool
    unitary: bool | None

    def to_dict(self):
        return dict(self.__dict__)


def classify_powers(A, C, max_power, tol=SYMMETRY_TOL):
    """For each k <= max_power: is A^k C^{-1} symmetric, and is A^k unitary?

    Unitarity is judged against the standard triple of matching dimension.
    """
    A = as_square(np.asarray(A, dtype=float), "A")
    decompose_hamiltonian(A, C)  # precondition: A itself is Hamiltonian
    Ci = solve_or_invert(C)
    std = standard_triple(A.shape[0] // 2)
    out = []
    P = np.eye(A.shape[0])
    for k in range(max_power + 1):
        if k:
            P = P @ A
        M = P @ Ci
        scale = max(1.0, frob(M))
        sym_res = frob(M - M.T) / scale
        anti_res = frob(M + M.T) / scale
        cond = np.linalg.cond(P)
        singular = not np.isfinite(cond) or cond > SINGULAR_CONDITION
        out.append(
            PowerReport(
                exponent=k,
                decomposable=sym_res <= tol,
                symmetric_residual=sym_res,
                antisymmetric_residual=anti_res,
                singular=bool(singular),
                unitary=None if singular else is_unitary_wrt(P, std),
            )
        )
    return out


def alternative_descriptions(A, triple, max_power=None, include_commutant=False):
    """Transport ``triple`` along every invertible power (and optionally every
    commutant basis element) of A, skipping those that break compatibility."""
    A = np.asarray(A, dtype=float)
    H = decompose_hamiltonian(A, triple.C)
    if max_power is None:
        max_power = 2 * A.shape[0]
    syms = symmetry_powers(A, max_power)
    if include_commutant:
        for B in commutant_basis(A):
            try:
                syms.append(as_symmetry(B, A, source="commutant"))
            except (ValueError, SingularMatrixError):
                continue
    out = []
    for T in syms:
        try:
            out.append(transport(T, A, triple, H))
        except (IncompatibleStructureError, NotHamiltonianError, SingularMatrixError) as exc:
            log.info("transport along %s rejected: %s", T.label, exc)
    return out


def oscillator_generator(omega=1.0):
    """A = [[0, omega], [-omega, 0]]: one mode rotating at frequency omega."""
    return np.array([[0.0, omega], [-omega, 0.0]])


def check_alternative(A, alt):
    """Invariance report of A against a transported triple."""
    return check_invariance(A, alt.triple)
