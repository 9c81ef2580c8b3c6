"""Finite-dimensional C*-algebra toolkit for quantum and classical mechanics.

Matrix *-algebras, states and spectral measures, the GNS construction,
Weyl systems on grids, and time evolution in both pictures, all at desk
scale and backed by numpy/scipy.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraBasis,
    AlgebraElement,
    adjoint,
    classify,
    commutator,
    generate_algebra,
    is_commutative,
    operator_norm,
)
from .classical import (
    ClassicalObservable,
    ClassicalState,
    PhasePoint,
    classical_expectation,
    config_observable,
    hamilton_flow,
    is_dispersion_free,
    momentum_observable,
    poisson_bracket,
)
from .dynamics import (
    EvolutionConfig,
    RadialGrid,
    build_hamiltonian,
    ehrenfest_check,
    eigen_spectrum,
    evolve_heisenberg,
    evolve_schrodinger,
    make_potential,
    picture_equivalence_check,
    radial_hydrogen_spectrum,
    run_trajectory,
)
from .gns import (
    AbstractState,
    GnsResult,
    commutant,
    find_intertwiner,
    gns_construct,
    is_irreducible,
)
from .spectral import SpectralMeasure, apply_function, spectral_measure, spectrum
from .states import (
    DensityState,
    expectation,
    from_vector,
    has_definite_value,
    is_pure,
    mix,
    uncertainty_check,
    variance,
)
from .weyl import (
    Grid1D,
    WaveFunction,
    WeylPair,
    build_momentum,
    build_position,
    clock_shift,
    grid_weyl_ops,
    heisenberg_obstruction_report,
)
