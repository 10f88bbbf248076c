"""Command-line front end.

Every subcommand builds one construction, runs its checks and prints one
line per check. ``--out`` writes the same report as JSON. Exit status is 0
when every check is within tolerance, 1 when a check fails, 2 for
configuration errors.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import alternatives as alt
from . import dynamics, kdeform, oscillator, realization, structures
from .errors import (
    DimensionError,
    IncompatibleStructureError,
    NonHermiteanError,
    NotHamiltonianError,
    PositivityError,
    SingularMatrixError,
    SingularModeError,
)
from .numerics import frob, random_hermitean, random_state
from .serialize import dumps, matrix_from_json, matrix_to_json, table_from_json

DEFAULT_SEED = 20240501


class ConfigError(Exception):
    pass


class Report:
    def __init__(self, command, params):
        self.command = command
        self.params = params
        self.checks = {}
        self.data = {}

    def check(self, name, residual, tol):
        residual = float(residual)
        self.checks[name] = {
            "residual": residual,
            "tol": tol,
            "ok": bool(residual <= tol),
        }

    def flag(self, name, value, expected=True):
        self.checks[name] = {"value": bool(value), "expected": expected,
                             "ok": bool(value) == expected}

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks.values())

    def first_failure(self):
        return next((k for k, c in self.checks.items() if not c["ok"]), None)

    def to_dict(self):
        return {
            "command": self.command,
            "params": self.params,
            "checks": self.checks,
            "data": self.data,
            "ok": self.ok,
        }

    def text(self):
        lines = [f"== {self.command}"]
        for k, v in self.data.items():
            if isinstance(v, (int, float, str, bool)):
                lines.append(f"{k}: {v}")
            elif isinstance(v, list) and all(isinstance(x, str) for x in v):
                lines.append(f"{k}: {', '.join(v) or '-'}")
        for name, c in self.checks.items():
            status = "PASS" if c["ok"] else "FAIL"
            if "residual" in c:
                lines.append(f"[{status}] {name}: {c['residual']:.3e} (tol {c['tol']:.0e})")
            else:
                lines.append(f"[{status}] {name}: {c['value']}")
        return "\n".join(lines)


def _load_json(value):
    """Inline JSON or a path to a JSON file."""
    if value is None:
        return None
    p = Path(value)
    try:
        if p.suffix == ".json" or p.exists():
            if not p.exists():
                raise ConfigError(f"file not found: {value}")
            return json.loads(p.read_text())
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {value!r}: {exc}") from exc


def _matrix(value):
    doc = _load_json(value)
    try:
        return None if doc is None else matrix_from_json(doc)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad matrix: {exc}") from exc


def _table_arg(value, lam, D, kind):
    """A named built-in table or a JSON array (inline or file)."""
    if value.strip().startswith(("[", "{")) or value.endswith(".json"):
        doc = _load_json(value)
    else:
        doc = {"name": value, "lambda": lam}
    try:
        return table_from_json(doc, D, kind=kind)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad {kind} table: {exc}") from exc


def _system(args):
    """(A, description) from --A or a named system."""
    A = _matrix(getattr(args, "A", None))
    if A is not None:
        return np.real_if_close(A).astype(float), "user"
    if args.system == "oscillator":
        return alt.oscillator_generator(args.omega), f"oscillator(omega={args.omega})"
    if args.system == "two-mode":
        H = np.diag([args.omega, 2 * args.omega])
        return realization.realify_hamiltonian(H), f"two-mode(omega={args.omega},{2 * args.omega})"
    raise ConfigError(f"unknown system {args.system!r}")


def _triple(args, dim):
    C, J = _matrix(getattr(args, "C", None)), _matrix(getattr(args, "J", None))
    if C is None and J is None:
        return structures.standard_triple(dim // 2)
    std = structures.standard_triple(dim // 2)
    return structures.assemble_triple(std.C if C is None else C, std.J if J is None else J)


# -- subcommands --------------------------------------------------------------


def cmd_one_level(args, rep):
    w, q0, p0, t = args.omega, args.q0, args.p0, args.t
    q, p = realization.one_level_trajectory(w, q0, p0, t)
    rep.data.update({"q": float(q), "p": float(p)})
    x = dynamics.evolve_schrodinger(alt.oscillator_generator(w), [q0, p0], t)
    rep.check("closed_form_vs_propagator", frob(x - [q, p]), 1e-10)
    dt = 1e-3
    ts = np.arange(0.0, 10.0, dt)
    qs, ps = realization.one_level_trajectory(w, q0, p0, ts)
    fd = (qs[2:] - 2 * qs[1:-1] + qs[:-2]) / dt**2 + w**2 * qs[1:-1]
    rep.check("finite_difference_residual", np.max(np.abs(fd)), 1e-6)
    E = realization.one_level_energy(w, qs, ps)
    rep.check("energy_drift", np.max(np.abs(E - E[0])), 1e-10)


def cmd_decompose(args, rep):
    A, name = _system(args)
    C = _matrix(args.C)
    C = structures.standard_triple(A.shape[0] // 2).C if C is None else C
    rep.data["system"] = name
    try:
        H = dynamics.decompose_hamiltonian(A, C)
    except NotHamiltonianError as exc:
        rep.check("hamiltonian_symmetry", exc.residual, dynamics.HAMILTONIAN_SYMMETRY_TOL)
        return
    rep.data["H"] = matrix_to_json(H)
    rep.check("reconstruction", frob(H @ C - A) / max(1.0, frob(A)), 1e-10)


def cmd_invariance(args, rep):
    A, name = _system(args)
    triple = _triple(args, A.shape[0])
    rep.data["system"] = name
    report = dynamics.check_invariance(A, triple, args.tol or 1e-10)
    for k, v in report.to_dict().items():
        rep.check(k, v["residual"], v["tol"])


def cmd_alternatives(args, rep):
    A, name = _system(args)
    triple = _triple(args, A.shape[0])
    rep.data["system"] = name
    tol = args.tol or alt.TRANSPORT_TOL
    H = dynamics.decompose_hamiltonian(A, triple.C)
    powers = {r.exponent: r for r in alt.classify_powers(A, triple.C, args.max_power)}
    descs = []
    syms = alt.symmetry_powers(A, args.max_power)
    if args.commutant:
        syms += [alt.SymmetryTransformation(B, "commutant")
                 for B in alt.commutant_basis(A)
                 if np.linalg.cond(B) < 1e12]
    for i, T in enumerate(syms):
        label = T.label if T.source == "power" else f"commutant[{i}]"
        d = alt.transport(T, A, triple, H, tol)
        inv = dynamics.check_invariance(A, d.triple)
        entry = d.to_dict()
        entry["label"] = label
        entry["invariance"] = inv.to_dict()
        if T.exponent is not None:
            entry["odd_power_decomposable"] = powers[T.exponent].decomposable
        descs.append(entry)
        for rel, r in d.residuals.items():
            rep.check(f"{label}:{rel}", r, tol)
        for k, v in inv.to_dict().items():
            rep.check(f"{label}:invariance:{k}", v["residual"], v["tol"])
    rep.data["descriptions"] = descs
    rep.data["non_unitary"] = [e["label"] for e in descs if not e["unitary"]]
    rep.data["genuinely_alternative"] = [
        e["label"] for e in descs if e["genuinely_alternative"]
    ]
    for k, r in powers.items():
        if k and not r.singular:
            rep.flag(f"A^{k}:decomposable", r.decomposable, expected=bool(k % 2))


def cmd_kdeform_verify(args, rep):
    rng = np.random.default_rng(args.seed)
    lams = args.lambdas
    tol = args.tol or 1e-10
    deformation = None
    if args.deformation:
        deformation = kdeform.DeformationOperator.from_json(_load_json(args.deformation))
    worst = {}
    for i in range(args.instances):
        if deformation is None:
            n = int(rng.integers(2, args.dim + 1))
            K = random_hermitean(n, rng)
            K /= np.linalg.norm(K, 2)
            D = kdeform.DeformationOperator(K, lams[i % len(lams)])
        else:
            D, n = deformation, deformation.dim
        A, B, C = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                   for _ in range(3))
        for k, v in kdeform.algebra_residuals(A, B, C, D).items():
            worst[k] = max(worst.get(k, 0.0), v)
    for k, v in worst.items():
        rep.check(k, v, tol)


def cmd_pictures(args, rep):
    rng = np.random.default_rng(args.seed)
    tol = args.tol or 1e-8
    worst = 0.0
    for _ in range(args.instances):
        n = int(rng.integers(1, args.dim + 1))
        H, B, psi = random_hermitean(n, rng), random_hermitean(n, rng), random_state(n, rng)
        psi /= np.linalg.norm(psi)
        for t in args.times:
            worst = max(worst, dynamics.ehrenfest_check(H, B, psi, t, tol)[1])
    rep.check("schrodinger_vs_heisenberg", worst, tol)


def cmd_recurrence(args, rep):
    D, eps = args.dim, args.epsilon
    kt = oscillator.solve_standard_commutation(eps, D)
    rep.data["table"] = kt.values.tolist()
    odd = kt.values[1::2]
    rep.check("odd_entries_one", np.max(np.abs(odd - 1)), 1e-14)
    even_err = 0.0
    for s in range(1, (D - 1) // 2 + 1):
        ratio = math.prod(range(2 * s - 1, 0, -2)) / math.prod(range(2 * s, 0, -2))
        even_err = max(even_err, abs(kt.values[2 * s] - (1 + ratio * eps)))
    rep.check("even_entries_closed_form", even_err, 1e-12)
    M = oscillator.kcommutator_fock(oscillator.build_fock(D), kt)
    k = D - 1
    rep.check("kcommutator_identity_interior", np.max(np.abs(M[:k, :k] - np.eye(k))), 1e-12)
    rep.data["boundary_entry"] = float(M[-1, -1])


def cmd_foscillator(args, rep):
    D = args.dim
    fo = oscillator.build_f_oscillator(_table_arg(args.f, args.lam, D, "f"), D)
    rep.data["f"] = fo.f.tolist()
    rep.data["phi"] = fo.phi.tolist()
    rep.data["F"] = fo.F.tolist()
    cr = fo.commutator_report()
    rep.check("commutator_vs_phi_interior", cr["interior_residual"], 1e-12)
    rep.check("commutator_offdiagonal", cr["offdiag_residual"], 1e-12)
    rep.data["boundary_entry"] = cr["boundary_entry"]
    blocks = fo.invariant_blocks()
    rep.data["blocks"] = blocks["blocks"]
    rep.check("block_coupling", blocks["coupling"], 1e-12)
    rep.check("heisenberg_phase", max(fo.heisenberg_residual(t) for t in (0.5, 2.0, 5.0)), 1e-8)
    lead = blocks["blocks"][0]
    n_max = lead[-1]
    if n_max >= 1:
        g = oscillator.dual_scalar_products(fo, n_max=n_max)
        rep.data["h1_norms"] = np.diag(g.gram_h1).tolist()
        for k, v in g.residuals.items():
            rep.check(f"h2:{k}", v, 1e-10)


def cmd_alt_hamiltonian(args, rep):
    D = args.dim
    h = _table_arg(args.htilde, args.lam, D, "htilde")
    sol = oscillator.solve_alternative_hamiltonian(oscillator.build_fock(D), h)
    rep.data.update(sol.to_dict())
    for k, v in sol.residuals.items():
        rep.check(k, v, args.tol or 1e-10)


COMMANDS = {
    "one-level": cmd_one_level,
    "decompose": cmd_decompose,
    "invariance": cmd_invariance,
    "alternatives": cmd_alternatives,
    "kdeform-verify": cmd_kdeform_verify,
    "pictures": cmd_pictures,
    "recurrence": cmd_recurrence,
    "foscillator": cmd_foscillator,
    "alt-hamiltonian": cmd_alt_hamiltonian,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="altquant", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--tol", type=float, help="override the check tolerance")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--instances", type=int, default=100)
    sub = parser.add_subparsers(dest="command", required=True)

    def system_args(p):
        p.add_argument("--system", default="oscillator", choices=["oscillator", "two-mode"])
        p.add_argument("--omega", type=float, default=2.0)
        p.add_argument("--A", help="generator matrix (JSON or path)")
        p.add_argument("--C", help="Poisson tensor (JSON or path)")

    p = sub.add_parser("one-level", parents=[common])
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--q0", type=float, default=1.0)
    p.add_argument("--p0", type=float, default=0.0)
    p.add_argument("--t", type=float, default=math.pi / 2)

    system_args(sub.add_parser("decompose", parents=[common]))
    p = sub.add_parser("invariance", parents=[common])
    system_args(p)
    p.add_argument("--J", help="complex structure (JSON or path)")
    p = sub.add_parser("alternatives", parents=[common])
    system_args(p)
    p.add_argument("--J", help="complex structure (JSON or path)")
    p.add_argument("--max-power", type=int, default=4)
    p.add_argument("--commutant", action="store_true",
                   help="also transport along a basis of the commutant of A")

    p = sub.add_parser("kdeform-verify", parents=[common])
    p.add_argument("--dim", type=int, default=6)
    p.add_argument("--lambdas", type=float, nargs="+", default=[0.1, 1.0])
    p.add_argument("--deformation", help="DeformationOperator JSON (or path)")

    p = sub.add_parser("pictures", parents=[common])
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--times", type=float, nargs="+", default=[0.1, 1.0, 5.0])

    p = sub.add_parser("recurrence", parents=[common])
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--dim", type=int, default=12)

    p = sub.add_parser("foscillator", parents=[common])
    p.add_argument("--f", default="affine", help="identity | affine | sinh | JSON array")
    p.add_argument("--lambda", dest="lam", type=float, default=0.2)
    p.add_argument("--dim", type=int, default=16)

    p = sub.add_parser("alt-hamiltonian", parents=[common])
    p.add_argument("--htilde", default="sinh", help="identity | sinh | JSON array")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--dim", type=int, default=16)
    return parser


def _apply_config(parser, args, argv):
    if not args.config:
        return args
    doc = _load_json(args.config)
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    if doc.get("command", args.command) != args.command:
        raise ConfigError(f"config is for {doc['command']!r}, not {args.command!r}")
    for key, value in doc.items():
        if key == "command":
            continue
        dest = key.replace("-", "_")
        if dest == "lambda":
            dest = "lam"
        if not hasattr(args, dest):
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(value, (dict, list)) and dest in {"A", "C", "J", "f", "htilde", "deformation"}:
            value = json.dumps(value)
        # command-line flags win over the config file
        flag = "--" + key.replace("_", "-")
        if not any(a == flag or a.startswith(flag + "=") for a in argv):
            setattr(args, dest, value)
    return args


def run(argv=None, stdout=None):
    """Run one subcommand; return ``(exit_code, report_dict_or_None)``."""
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config(parser, args, argv)
        params = {k: v for k, v in sorted(vars(args).items()) if k not in {"out", "config"}}
        rep = Report(args.command, params)
        COMMANDS[args.command](args, rep)
    except (IncompatibleStructureError, NotHamiltonianError, PositivityError,
            SingularModeError) as exc:
        print(f"FAILED: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1, None
    except (ConfigError, DimensionError, NonHermiteanError, SingularMatrixError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    print(rep.text(), file=stdout)
    doc = rep.to_dict()
    if args.out:
        Path(args.out).write_text(dumps(doc) + "\n")
    if not rep.ok:
        print(f"FAILED: {rep.first_failure()}", file=sys.stderr)
        return 1, doc
    return 0, doc


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
