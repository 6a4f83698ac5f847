"""Bound-state solver for a 2D position-dependent-mass particle in Morse-like confinement.

Closed-form spectra and eigenfunctions of the exactly reducible model, an
independent finite-difference oracle validating every closed form, and a CLI
that emits deterministic CSV artifacts.
"""

from .effective import (
    GammaSet,
    epsilon_of,
    gammas_at,
    ueff_at,
    veff_at,
    von_roos_U,
    xi_of,
)
from .errors import (
    ChannelUnsupported,
    ConfigError,
    DegenerateWindow,
    EvaluationOverflow,
    GridTooSmall,
    InvalidLevel,
    NoBoundStates,
    NoBracket,
    NotConverged,
    OrderingNotSolvable,
    PdmorseError,
    QuadratureNotConverged,
    Unbounded,
    UnknownLevel,
)
from .model import (
    MassParams,
    Model,
    OrderingParams,
    PotentialParams,
    mass_at,
    mass_derivatives,
    potential_at,
    solve_ambiguity_free_ordering,
)
from .morse1d import (
    Bound1D,
    MorseChannel,
    QuadratureSpec,
    channel_from_gammas,
    energy_1d,
    laguerre,
    m_max,
    normalize_1d,
    wavefunction_1d,
)
from .oracle import (
    EigenResult,
    Grid1D,
    Grid2D,
    auto_grid_1d,
    fd_eigen_1d,
    fd_eigen_2d,
    minimize_potential,
    oracle_energy_2d,
)
from .spectrum import (
    REFERENCE_LEVELS,
    DegeneracyCluster,
    EnergyWindow,
    SpectrumEntry,
    TableComparison,
    ValidityFlags,
    Variant,
    channels_at,
    chi_mn,
    compare_table,
    energy_window,
    enumerate_spectrum,
    find_inversions,
    find_roots,
    group_degeneracies,
    mismatch,
    pde_residual,
    psi_mn,
)

__all__ = [
    "Bound1D",
    "ChannelUnsupported",
    "ConfigError",
    "DegenerateWindow",
    "DegeneracyCluster",
    "EigenResult",
    "EnergyWindow",
    "EvaluationOverflow",
    "GammaSet",
    "Grid1D",
    "Grid2D",
    "GridTooSmall",
    "InvalidLevel",
    "MassParams",
    "Model",
    "MorseChannel",
    "NoBoundStates",
    "NoBracket",
    "NotConverged",
    "OrderingNotSolvable",
    "OrderingParams",
    "PdmorseError",
    "PotentialParams",
    "QuadratureNotConverged",
    "QuadratureSpec",
    "REFERENCE_LEVELS",
    "SpectrumEntry",
    "TableComparison",
    "Unbounded",
    "UnknownLevel",
    "ValidityFlags",
    "Variant",
    "auto_grid_1d",
    "channel_from_gammas",
    "channels_at",
    "chi_mn",
    "compare_table",
    "energy_1d",
    "energy_window",
    "enumerate_spectrum",
    "epsilon_of",
    "fd_eigen_1d",
    "fd_eigen_2d",
    "find_inversions",
    "find_roots",
    "gammas_at",
    "group_degeneracies",
    "laguerre",
    "m_max",
    "mass_at",
    "mass_derivatives",
    "minimize_potential",
    "mismatch",
    "normalize_1d",
    "oracle_energy_2d",
    "pde_residual",
    "potential_at",
    "psi_mn",
    "solve_ambiguity_free_ordering",
    "ueff_at",
    "veff_at",
    "von_roos_U",
    "wavefunction_1d",
    "xi_of",
]
