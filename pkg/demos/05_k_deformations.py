"""
Deformed products and scalar products
=====================================

"""

import numpy as np

from altquant.kdeform import (
    DeformationOperator,
    algebra_residuals,
    fk_map,
    kproduct,
    kscalar_conservation,
)
from altquant.numerics import random_hermitean, random_state

rng = np.random.default_rng(3)
K = random_hermitean(4, rng)
K /= np.linalg.norm(K, 2)
D = DeformationOperator(K, 0.5)

A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
C = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
for name, r in algebra_residuals(A, B, C, D).items():
    print(f"{name:15s} {r:.1e}")

# F_K turns the deformed product into the ordinary one
print(np.allclose(fk_map(A, D) @ fk_map(B, D), fk_map(kproduct(A, B, D), D)))

# the deformed norm is conserved only if K commutes with H
H = random_hermitean(4, rng)
psi = random_state(4, rng)
times = np.linspace(0, 5, 11)
print("drift, K commuting with H:", kscalar_conservation(DeformationOperator(H @ H / 10, 0.5), H, psi, times))
print("drift, generic K:         ", kscalar_conservation(D, H, psi, times))
