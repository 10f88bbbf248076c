"""
Schroedinger vs Heisenberg evolution
====================================

"""

import numpy as np

from altquant.dynamics import ehrenfest_check, evolve_heisenberg, propagator
from altquant.numerics import random_hermitean, random_state
from altquant.oscillator import build_fock

rng = np.random.default_rng(7)
H, B = random_hermitean(4, rng), random_hermitean(4, rng)
psi = random_state(4, rng)
psi /= np.linalg.norm(psi)

for t in (0.1, 1.0, 5.0):
    ok, res = ehrenfest_check(H, B, psi, t)
    psi_t = propagator(H, t) @ psi
    print(f"t={t}: <B> = {(psi_t.conj() @ B @ psi_t).real:+.6f}, mismatch {res:.1e}")

# the ladder operator only picks up a phase
lad = build_fock(8)
at = evolve_heisenberg(lad.hamiltonian, lad.a, 1.3)
print("a(t) = e^{-it} a on interior modes:",
      np.allclose(at[:7, :7], np.exp(-1.3j) * lad.a[:7, :7]))
