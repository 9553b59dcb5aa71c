"""Nonstabilizerness (stabilizer Renyi entropy M2) in spin-chain quantum
walks: exact sector dynamics, Pauli-spectrum tools, Bessel closed forms, the
bound-pair effective model, and spacing-ratio statistics."""

__version__ = "0.1.0"

from .errors import (
    EmptyWindowError,
    InsufficientDataError,
    InvalidSpecError,
    MagicwalkError,
    NoFrontError,
    NumericalError,
    ResourceLimitError,
)
from .kernels import BACKEND
from .model import (
    FULL_SPACE_MAX_L,
    TWO_MAGNON_MAX_L,
    ChainSpec,
    HamiltonianMatrix,
    SectorBasis,
    build_full_hamiltonian,
    build_sector_hamiltonian,
    doublon_basis,
    embed_sector_state,
    initial_state_vector,
    single_magnon_basis,
    two_magnon_basis,
)
from .dynamics import (
    Propagator,
    WalkState,
    bessel_j_array,
    bessel_tail_flag,
    evolve,
    magnetization_profile,
    single_particle_amplitudes,
)
from .magic import (
    BRUTEFORCE_MAX_L,
    FILTER_TAU,
    SPECTRUM_MAX_L,
    FilteredSpectrum,
    PauliSpectrum,
    filter_spectrum,
    m2_asymptotic,
    m2_bessel,
    m2_bruteforce,
    m2_coeff,
    m2_from_spectrum,
    pauli_spectrum_full,
    read_filtered_spectrum,
    stabilizer_counts,
    write_filtered_spectrum,
)
from .doublon import (
    DoublonParams,
    default_late_window,
    doublon_magic_series,
    doublon_params,
    shift_fit,
)
from .stats import (
    FrontFit,
    SpacingStats,
    cumulative_average,
    light_cone_front,
    log_growth_fit,
    poisson_reference,
    snapshot_times,
    spacing_ratios,
)
