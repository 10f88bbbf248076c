"""Exception types raised by the structure checks."""

import numpy as np


class DimensionError(ValueError):
    """Shape mismatch, non-square input, or dimension above the desk-scale cap."""


class SingularMatrixError(np.linalg.LinAlgError):
    """Matrix too ill-conditioned to invert."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class NonHermiteanError(ValueError):
    pass


class IncompatibleStructureError(ValueError):
    """A structure predicate failed.

    ``check`` names the first predicate that failed (e.g. ``"symmetry"``,
    ``"positivity"``, ``"antisymmetry"``, ``"complex_structure"``).
    """

    def __init__(self, check, message, residual=None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.residual = residual


class NotHamiltonianError(ValueError):
    """A C^{-1} is not symmetric, so A has no Hamiltonian w.r.t. C."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PositivityError(ValueError):
    """A table of exponentials e^{lambda K(n)} has a nonpositive entry."""

    def __init__(self, message, modes=()):
        super().__init__(message)
        self.modes = tuple(modes)


class SingularModeError(ValueError):
    def __init__(self, message, modes=()):
        super().__init__(message)
        self.modes = tuple(modes)
