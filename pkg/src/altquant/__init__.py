"""Alternative Hamiltonian and Hilbert-space structures for linear quantum dynamics."""

from .alternatives import (
    AlternativeDescription,
    SymmetryTransformation,
    classify_powers,
    commutant_basis,
    is_unitary_wrt,
    symmetry_powers,
    transport,
)
from .dynamics import (
    InvarianceReport,
    check_invariance,
    decompose_hamiltonian,
    ehrenfest_check,
    evolve_heisenberg,
    evolve_schrodinger,
)
from .errors import (
    DimensionError,
    IncompatibleStructureError,
    NonHermiteanError,
    NotHamiltonianError,
    PositivityError,
    SingularMatrixError,
    SingularModeError,
)
from .kdeform import (
    DeformationOperator,
    fk_map,
    is_constant_of_motion,
    kbracket,
    kproduct,
    kscalar,
)
from .numerics import is_positive_definite, mat_exp, solve_or_invert
from .oscillator import (
    FockLadder,
    FOscillator,
    KTable,
    build_f_oscillator,
    build_fock,
    dual_scalar_products,
    f_from_K,
    kcommutator_fock,
    solve_alternative_hamiltonian,
    solve_standard_commutation,
)
from .realization import (
    complexify_state,
    one_level_trajectory,
    realify_hamiltonian,
    realify_observable,
    realify_state,
)
from .structures import (
    QuadraticObservable,
    StructureTriple,
    assemble_triple,
    matrix_lie_product_C,
    poisson_bracket_quadratics,
    standard_triple,
    symplectic_from_poisson,
)

__version__ = "0.1.0"
