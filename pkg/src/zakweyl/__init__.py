"""Spectral and topological quantities of 1-D periodic Jacobi operators.

Band structure from the transfer matrix, half-line Weyl m-functions, surface
impedances, and the Zak phase computed two ways: the discrete Wilson loop on
Bloch eigenvectors and a real-space formula built from m_+ alone.
"""

from __future__ import annotations

from .core import (
    PRESETS,
    ComplexEnergy,
    UnitCell,
    dumps_cell,
    load_cell,
    make_chain,
    make_preset,
    make_rice_mele,
    make_ssh,
    make_trimer,
    parse_cell,
    rotate_cell,
)
from .errors import (
    BandEdgeSingularity,
    DegenerateEigenvalue,
    DirichletPole,
    DirichletPoleOnBand,
    IllPlacedEnergy,
    InputError,
    IsolatedBandViolation,
    NonPositiveHopping,
    NotInGap,
    NumericalError,
    ParseError,
    QuadratureFailure,
    RootFindingFailure,
    SnapFailure,
    SymmetryViolation,
    ValidationError,
    ZakWeylError,
)
from .impedance import (
    Impedance,
    impedance_from_floquet,
    is_mirror_symmetric,
    surface_impedance,
    symmetrize,
    verify_unimodularity,
)
from .phase import ZakPhaseResult, canonical_phase, circle_distance
from .symbol import BlochSymbol, band_eigenpair, build_symbol, wilson_phase, zak_wilson
from .transfer import (
    Band,
    band_edges,
    discriminant,
    discriminant_derivative,
    dispersion,
    dispersion_derivative,
    get_band,
    one_period_transfer,
)
from .weyl import (
    WeylValue,
    dirichlet_eigenvalues,
    m_minus,
    m_plus,
    m_plus_cf,
    m_plus_derivative,
    quadratic_coefficients,
    spectral_density,
)
from .zak import (
    berry_connection_weyl,
    compare_methods,
    zak_quantised_symmetric,
    zak_weyl,
)

__version__ = "0.1.0"
