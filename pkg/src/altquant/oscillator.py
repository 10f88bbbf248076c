"""Truncated Fock space: deformed commutators, alternative Hamiltonians and
f-oscillators.

All infinite-space identities are asserted on *interior* modes
n = 0 .. D-2 only. The last level is where truncation breaks [a, a^dag] = 1
and is reported separately.

Tables of exponentials ``E(n) = e^{lambda K(n)}`` are used directly; the
shift rules a K(n) = K(n+1) a and a^dag K(n) = K(n-1) a^dag mean that
E(-1) is never needed.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionError, PositivityError, SingularModeError
from .numerics import MAX_FOCK_DIM, frob, mat_exp

SINGULAR_MODE_TOL = 1e-12
ZERO_F_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FockLadder:
    D: int
    a: np.ndarray
    a_dag: np.ndarray
    n_hat: np.ndarray

    @property
    def interior(self):
        return slice(0, self.D - 1)

    @property
    def hamiltonian(self):
        """H = a^dag a + 1/2 (unit frequency)."""
        return self.n_hat + 0.5 * np.eye(self.D)


def build_fock(D):
    if not 2 <= D <= MAX_FOCK_DIM:
        raise DimensionError(f"Fock dimension must be in [2, {MAX_FOCK_DIM}], got {D}")
    a = np.diag(np.sqrt(np.arange(1, D, dtype=float)), k=1)
    a_dag = a.T.copy()
    return FockLadder(D=D, a=a, a_dag=a_dag, n_hat=a_dag @ a)


@dataclass(frozen=True, eq=False)
class KTable:
    """Diagonal values E(n) = e^{lambda K(n)} > 0.

    ``epsilon`` is set for tables produced by `solve_standard_commutation`
    and is ``None`` otherwise.
    """

    values: np.ndarray
    epsilon: float | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        bad = np.flatnonzero(~(v > 0))
        if bad.size:
            raise PositivityError(
                f"e^(lambda K(n)) must be > 0; violated at n = {bad.tolist()}", bad
            )
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def exponent(self):
        """lambda K(n) = log E(n)."""
        return np.log(self.values)

    def deformation(self, lam=1.0):
        from .kdeform import DeformationOperator

        return DeformationOperator.from_exp_table(self.values, lam)


def _values(ktable, D):
    v = ktable.values if isinstance(ktable, KTable) else np.asarray(ktable, float)
    if v.size < D:
        raise ValueError(f"table has {v.size} entries, need at least D = {D}")
    return v[:D]


def kcommutator_fock(ladder, ktable):
    """[a, a^dag]_K = a E(n) a^dag - a^dag E(n) a as a D x D matrix."""
    E = np.diag(_values(ktable, ladder.D))
    return ladder.a @ E @ ladder.a_dag - ladder.a_dag @ E @ ladder.a


def kcommutator_closed_form(ktable, D):
    """Interior diagonal (E(n+1) - E(n-1)) n + E(n+1), n = 0 .. D-2."""
    E = _values(ktable, D)
    n = np.arange(D - 1)
    E_up = E[1:D]
    E_down = np.zeros(D - 1)
    E_down[1:] = E[: D - 2]  # n = 0 carries a factor n = 0; E(-1) unused
    return (E_up - E_down) * n + E_up


@dataclass
class AltHamiltonianSolution:
    """Result of solving Htilde e^{lambda K} = a^dag a + 1/2 mode by mode.

    ``table`` holds e^{lambda K}(n) with NaN at singular modes.
    """

    table: np.ndarray
    singular_modes: list
    residuals: dict
    tol: float

    @property
    def ok(self):
        return all(v <= self.tol for v in self.residuals.values())

    def to_dict(self):
        return {
            "table": [None if np.isnan(v) else float(v) for v in self.table],
            "singular_modes": list(self.singular_modes),
            "checks": {
                k: {"residual": v, "tol": self.tol, "ok": bool(v <= self.tol)}
                for k, v in self.residuals.items()
            },
        }


def solve_alternative_hamiltonian(ladder, htilde, strict=False, tol=1e-10):
    """Find e^{lambda K} with Htilde e^{lambda K} = H for diagonal Htilde.

    Modes with |Htilde(n)| < 1e-12 are singular: they are listed in the
    result (or raise `SingularModeError` when ``strict``) and excluded from
    verification. The verification evaluates [Htilde, a]_K + a and
    [Htilde, a^dag]_K - a^dag as dense matrices on the non-singular
    interior modes.
    """
    D = ladder.D
    h = np.asarray(htilde, dtype=float).ravel()
    if h.size < D:
        raise ValueError(f"Htilde table has {h.size} entries, need {D}")
    h = h[:D]
    singular = np.flatnonzero(np.abs(h) < SINGULAR_MODE_TOL).tolist()
    if singular and strict:
        raise SingularModeError(f"Htilde vanishes at modes {singular}", singular)
    n = np.arange(D, dtype=float)
    table = np.full(D, np.nan)
    ok = np.abs(h) >= SINGULAR_MODE_TOL
    table[ok] = (n[ok] + 0.5) / h[ok]
    nonpos = np.flatnonzero(ok & ~(table > 0)).tolist()
    if nonpos:
        raise PositivityError(f"e^(lambda K) <= 0 at modes {nonpos}", nonpos)

    S = np.flatnonzero(ok)
    sub = np.ix_(S, S)
    a, ad = ladder.a[sub], ladder.a_dag[sub]
    Ht, E = np.diag(h[S]), np.diag(table[S])
    lower = Ht @ E @ a - a @ E @ Ht + a
    raising = Ht @ E @ ad - ad @ E @ Ht - ad
    H = ladder.hamiltonian[sub]
    plain = H @ a - a @ H + a
    keep = S <= D - 2
    inner = np.ix_(keep, keep)
    residuals = {
        "[Ht,a]_K + a": frob(lower[inner]),
        "[Ht,a^dag]_K - a^dag": frob(raising[inner]),
        "[H,a] + a": frob(plain[inner]),
    }
    return AltHamiltonianSolution(table, singular, residuals, tol)


def solve_standard_commutation(epsilon, D):
    """One-parameter family of tables with [a, a^dag]_K = 1 on interior modes.

    Iterates (n+1) E(n+1) - n E(n-1) = 1 from E(0) = 1 + epsilon. The n = 0
    equation forces E(1) = 1, so every odd entry is 1 and the even entries
    carry epsilon.
    """
    if D < 2:
        raise DimensionError("D must be >= 2")
    if D > MAX_FOCK_DIM:
        raise DimensionError(f"D must be <= {MAX_FOCK_DIM}")
    E = np.empty(D)
    E[0] = 1.0 + epsilon
    E[1] = 1.0
    for n in range(1, D - 1):
        E[n + 1] = n / (n + 1) * E[n - 1] + 1.0 / (n + 1)
    return KTable(E, epsilon=float(epsilon))


def parity_structure(ktable, tol=1e-14):
    """Which modes carry a trivial deformation (E(n) = 1)?

    For recurrence tables with epsilon != 0 the trivial modes are exactly
    the odd ones.
    """
    E = ktable.values if isinstance(ktable, KTable) else np.asarray(ktable, float)
    trivial = np.abs(E - 1) <= tol
    n = np.arange(E.size)
    return {
        "trivial_modes": np.flatnonzero(trivial).tolist(),
        "odd_trivial": bool(np.all(trivial[n % 2 == 1])),
        "even_deformed": bool(np.all(~trivial[n % 2 == 0])),
    }


def f_from_K(ktable, D):
    """f(n) = sqrt(E(n-1) E(n)) for n >= 1, with f(0) = 1 by convention.

    f(0) never enters a f(n): the column of ``a`` at the vacuum is zero.
    """
    E = _values(ktable, D)
    if np.any(~(E > 0)):
        raise PositivityError("table entries must be > 0")
    f = np.ones(D)
    f[1:] = np.sqrt(E[:-1] * E[1:])
    return f


def fk_ladder_residual(ktable, D):
    """|e^{lK/2} a e^{lK/2} - a f(n)| on the full truncated space."""
    ladder = build_fock(D)
    half = np.diag(np.sqrt(_values(ktable, D)))
    return frob(half @ ladder.a @ half - ladder.a @ np.diag(f_from_K(ktable, D)))


@dataclass(frozen=True, eq=False)
class FOscillator:
    """Deformed pair A = a f(n), A^dag = f(n) a^dag on a truncated Fock space."""

    f: np.ndarray
    ladder: FockLadder

    @property
    def D(self):
        return self.ladder.D

    @cached_property
    def A(self):
        return self.ladder.a @ np.diag(self.f)

    @cached_property
    def A_dag(self):
        return np.diag(self.f) @ self.ladder.a_dag

    @property
    def phi(self):
        """phi(n) = (n+1) f(n+1)^2 - n f(n)^2 for n = 0 .. D-2."""
        n = np.arange(self.D - 1)
        f2 = self.f**2
        return (n + 1) * f2[1:] - n * f2[:-1]

    @property
    def F(self):
        """F(n) = f(n)^2 n, the spectrum of A^dag A."""
        return self.f**2 * np.arange(self.D)

    def commutator(self):
        return self.A @ self.A_dag - self.A_dag @ self.A

    def commutator_report(self):
        M = self.commutator()
        d = np.diag(M)
        return {
            "interior_residual": float(np.max(np.abs(d[:-1] - self.phi))),
            "offdiag_residual": frob(M - np.diag(d)),
            "boundary_entry": float(d[-1]),
            "trace": float(np.trace(M)),
        }

    def invariant_blocks(self, tol=ZERO_F_TOL):
        """Split the space at zeros of f.

        A zero f(z) = 0 with z >= 1 kills A|z> and A^dag|z-1>, so the levels
        below z and those from z up never mix. Returns the list of blocks
        and the largest matrix element coupling any block to its complement.
        """
        zeros = [z for z in range(1, self.D) if abs(self.f[z]) < tol]
        edges = [0, *zeros, self.D]
        blocks = [list(range(lo, hi)) for lo, hi in zip(edges[:-1], edges[1:])]
        leak = 0.0
        for b in blocks:
            inside = np.zeros(self.D, bool)
            inside[b] = True
            for M in (self.A, self.A_dag):
                leak = max(leak, float(np.max(np.abs(M[np.ix_(~inside, inside)]), initial=0)))
        return {"zeros": zeros, "blocks": blocks, "coupling": leak}

    def heisenberg_residual(self, t):
        """Interior |e^{iHt} A e^{-iHt} - e^{-it} A| with H = n + 1/2."""
        U = mat_exp(-1j * t * self.ladder.hamiltonian)
        At = U.conj().T @ self.A @ U
        k = self.D - 1
        return frob((At - np.exp(-1j * t) * self.A)[:k, :k])


def build_f_oscillator(f, D):
    f = np.asarray(f, dtype=float).ravel()
    if f.size < D:
        raise ValueError(f"f table has {f.size} entries, need {D}")
    f = f[:D]
    if not np.all(np.isfinite(f)):
        raise ValueError("f table has non-finite entries")
    return FOscillator(f=f, ladder=build_fock(D))


@dataclass
class DualGram:
    states: np.ndarray  # columns |N> in the |n> basis
    gram_h1: np.ndarray
    metric_h2: np.ndarray
    commutator_h2: np.ndarray  # <M|(A A^dag - A^dag A)|N>_{h2}
    adjoint_commutator_h2: np.ndarray  # with the h2-adjoint of A^dag
    residuals: dict = field(default_factory=dict)


def dual_scalar_products(fosc, n_max=None):
    """States |N> = (A^dag)^n / sqrt(n!) |0> and the two scalar products.

    h1 is the reference product (<n|m> = delta). h2 declares {|N>}
    orthonormal. In h2 the creation operator A^dag acts as the standard
    sqrt(n+1) ladder, and with its h2-adjoint b the commutator
    <M|(b A^dag - A^dag b)|N>_{h2} is delta on interior modes. The literal
    <M|(A A^dag - A^dag A)|N>_{h2} stays diag(phi).
    """
    D = fosc.D
    if n_max is None:
        n_max = D - 1
    zeros = [k for k in range(1, n_max + 1) if abs(fosc.f[k]) < ZERO_F_TOL]
    if zeros:
        raise ValueError(f"f vanishes at n = {zeros}; restrict to the leading block")
    m = n_max + 1
    vac = np.zeros(D)
    vac[0] = 1.0
    cols = []
    v = vac
    for n in range(m):
        cols.append(v / math.sqrt(math.factorial(n)))
        v = fosc.A_dag @ v
    V = np.array(cols).T[:m]  # states live in span{|0>..|n_max>}
    Vi = np.linalg.inv(V)
    gram = V.T @ V
    metric = Vi.T @ Vi
    sub = slice(0, m)
    comm = Vi @ fosc.commutator()[sub, sub] @ V
    Ad_N = Vi @ fosc.A_dag[sub, sub] @ V
    b_N = Ad_N.conj().T  # adjoint in the h2-orthonormal basis
    adj = b_N @ Ad_N - Ad_N @ b_N
    k = m - 1  # interior of the block
    residuals = {
        "adjoint_commutator": frob(adj[:k, :k] - np.eye(k)),
        "creation_is_standard": frob(Ad_N - build_fock(m).a_dag) if m >= 2 else 0.0,
    }
    return DualGram(V, gram, metric, comm, adj, residuals)
