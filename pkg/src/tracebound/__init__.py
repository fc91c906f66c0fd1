"""Trace distance, fidelity and superfidelity of quantum states, with numerical
checks of the superfidelity lower bound on trace distance."""

__version__ = "0.1.0"

from .errors import (
    BlochNormExceeded,
    ConvergenceFailure,
    DimensionMismatch,
    InvalidSpec,
    NonHermitianInput,
    NotPositiveSemidefinite,
    ParameterOutOfRange,
    RankOutOfRange,
    StateValidationError,
    TraceboundError,
    ZeroVector,
)
from .linalg import EigenDecomposition, eigh, hs_inner, kronecker, matrix_sqrt_psd, split_projectors, trace_norm
from .measures import (
    MeasureSet,
    bures_distance,
    d_b_prime,
    d_g,
    error_probability,
    fidelity,
    measure_all,
    sqrt_fidelity,
    superfidelity,
    trace_distance,
    trace_distance_projector_form,
)
from .states import (
    BlochVector,
    DensityMatrix,
    RngSpec,
    family_rho_alpha,
    family_sigma_beta,
    family_tau_gamma,
    load_state,
    maximally_mixed,
    pure_state,
    purity,
    qubit_from_bloch,
    random_density,
    random_unitary,
    save_state,
)
