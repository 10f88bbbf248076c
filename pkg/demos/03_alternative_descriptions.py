"""
Alternative Hermitean structures for one dynamics
=================================================

"""

import numpy as np

from altquant.alternatives import alternative_descriptions, classify_powers, transport
from altquant.dynamics import check_invariance, flow_preservation
from altquant.realization import realify_hamiltonian
from altquant.structures import standard_triple

# two modes with frequencies 1 and 2
A = realify_hamiltonian(np.diag([1.0, 2.0]))
tr = standard_triple(2)
print("invariance of the standard triple:", check_invariance(A, tr).all_ok)

# odd powers factor through C, even ones do not
for r in classify_powers(A, tr.C, 4):
    print(f"A^{r.exponent}: decomposable={r.decomposable} unitary={r.unitary}")

# carry the structures along A^2
alt = transport(A @ A, A, tr)
print("new metric s_T =\n", alt.triple.s)
print("new Hamiltonian H_T =\n", alt.H)
print("unitary:", alt.unitary, " genuinely new:", alt.genuinely_alternative)

# the dynamics preserves the new structure too
print("invariance w.r.t. s_T:", check_invariance(A, alt.triple).all_ok)
print("flow residuals at t = 10:", flow_preservation(A, alt.triple, 10.0))

# every invertible power, summarized
for d in alternative_descriptions(A, tr, max_power=4):
    print(f"{d.label}: s_T diag = {np.round(np.diag(d.triple.s), 3)}")
