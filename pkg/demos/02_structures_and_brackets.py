"""
Poisson tensor, complex structure and the Hermitean form
========================================================

"""

import numpy as np

from altquant.structures import (
    QuadraticObservable,
    assemble_triple,
    matrix_lie_product_C,
    poisson_bracket_pointwise,
    poisson_bracket_quadratics,
    standard_triple,
)
from altquant.errors import IncompatibleStructureError

tr = standard_triple(2)
print("C0 =\n", tr.C)
print("J0 =\n", tr.J)
print("s = C0 J0 =\n", tr.s)

# h(x, y) = x.s.y + i x.omega.y
x = np.array([1.0, 0.0, 0.0, 0.0])
y = np.array([0.0, 0.0, 1.0, 0.0])
print("h(x, y) =", tr.hermitean_form(x, y))

# flipping J keeps J^2 = -1 but the metric becomes negative
try:
    assemble_triple(tr.C, -tr.J)
except IncompatibleStructureError as exc:
    print("rejected:", exc.check)

# brackets of quadratic functions close on their Hessians
rng = np.random.default_rng(1)
F = rng.standard_normal((4, 4)); F = F + F.T
G = rng.standard_normal((4, 4)); G = G + G.T
f, g = QuadraticObservable(F), QuadraticObservable(G)
b = poisson_bracket_quadratics(f, g, tr.C)
pt = rng.standard_normal(4)
print("bracket at a point, pointwise vs matrix:",
      poisson_bracket_pointwise(f, g, tr.C, pt), b(pt))
print("Hessian equals F C G - G C F:",
      np.allclose(b.Q, matrix_lie_product_C(F, G, tr.C)))
