"""
A single level as a classical oscillator
========================================

"""

import numpy as np

from altquant import realization, dynamics, alternatives

# one complex amplitude psi = (q + i p)/sqrt(2) with energy omega
omega = 1.0
H = np.array([[omega]])
A = realization.realify_hamiltonian(H)
print("real generator\n", A)

# a quarter period turns q into -p
q, p = realization.one_level_trajectory(omega, 1.0, 0.0, np.pi / 2)
print("after t = pi/2:", round(float(q), 12), round(float(p), 12))

# the matrix exponential agrees with the closed form
x = dynamics.evolve_schrodinger(A, [1.0, 0.0], np.pi / 2)
print("propagator:", x)

# energy along a long trajectory
t = np.linspace(0, 10, 10001)
q, p = realization.one_level_trajectory(omega, 1.0, 0.0, t)
E = realization.one_level_energy(omega, q, p)
print("energy drift over [0, 10]:", np.abs(E - E[0]).max())

# same generator written as a rotation
print("matches oscillator_generator:", np.allclose(A, alternatives.oscillator_generator(omega)))
