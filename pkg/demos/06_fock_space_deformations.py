"""
Deformed commutators in a truncated Fock space
==============================================

"""

import numpy as np

from altquant.oscillator import (
    build_f_oscillator,
    build_fock,
    dual_scalar_products,
    kcommutator_fock,
    parity_structure,
    solve_alternative_hamiltonian,
    solve_standard_commutation,
)

D = 12
lad = build_fock(D)

# a family of deformations that all keep [a, a^dag]_K = 1
for eps in (0.0, 0.4, -0.5):
    kt = solve_standard_commutation(eps, D)
    M = kcommutator_fock(lad, kt)
    print(f"eps={eps:+.1f} table={np.round(kt.values[:6], 4)} "
          f"interior identity={np.allclose(M[:-1, :-1], np.eye(D - 1))}")
print(parity_structure(solve_standard_commutation(0.4, D)))

# a Hamiltonian with a sinh spectrum generating the same equations of motion
lam = 0.5
h = np.sinh(lam * np.arange(16)) / np.sinh(lam)
sol = solve_alternative_hamiltonian(build_fock(16), h)
print("singular modes:", sol.singular_modes)
print("checks:", {k: f"{v:.1e}" for k, v in sol.residuals.items()})

# f-oscillator with f^2 = 1 + 0.2 n
fo = build_f_oscillator(np.sqrt(1 + 0.2 * np.arange(16)), 16)
print("phi(n):", np.round(fo.phi[:5], 3))
g = dual_scalar_products(fo, n_max=4)
print("h1 norms of |N>:", np.round(np.diag(g.gram_h1), 4))

# a zero of f splits the space
f = np.ones(10)
f[3] = 0.0
print(build_f_oscillator(f, 10).invariant_blocks())
