"""Honest stabilizer-channel approximations of one-qubit error channels.

Find the mixture of efficiently simulable error operators (Clifford
unitaries and measurement-induced translations) closest to a target error
channel, under the constraint that the mixture is at least as erroneous as
the target.
"""

from .approximate import (
    SUPPORT_THRESHOLD,
    ApproximationProblem,
    ApproximationResult,
    SolverError,
    average_qp_data,
    extract_support,
    solve,
    solve_batch,
)
from .catalog import (
    MODELS,
    ErrorSample,
    Generator,
    MixtureParams,
    build_mixture,
    clifford_unitaries,
    enumerate_generators,
    generator_chis,
    identity_fidelity_coefficients,
    mixture_chi,
    sample_error,
    sample_errors,
)
from .channels import (
    ATOL,
    PAULI_BASIS,
    PAULIS,
    PROBE_BLOCH,
    ChiMatrix,
    CptpViolation,
    KrausChannel,
    apply_channel,
    apply_chi,
    bloch_from_density,
    bloch_image,
    chi_to_kraus,
    density_from_bloch,
    identity_channel,
    identity_chi,
    kraus_to_chi,
    validate_cptp,
)
from .metrics import (
    CONSTRAINT_KINDS,
    avg_fidelity,
    fidelity_quadratic,
    hs_distance,
    min_quadratic_form,
    worst_fidelity,
    worst_fidelity_point,
)
from .targets import (
    AdcSpec,
    GenerationError,
    PolSpec,
    RandomChannelSpec,
    adc,
    haar_unitary,
    pol_xy,
    random_chi,
    random_chi_batch,
)

__version__ = "0.1.0"

__all__ = [
    "ATOL",
    "CONSTRAINT_KINDS",
    "MODELS",
    "PAULI_BASIS",
    "PAULIS",
    "PROBE_BLOCH",
    "SUPPORT_THRESHOLD",
    "AdcSpec",
    "ApproximationProblem",
    "ApproximationResult",
    "ChiMatrix",
    "CptpViolation",
    "ErrorSample",
    "GenerationError",
    "Generator",
    "KrausChannel",
    "MixtureParams",
    "PolSpec",
    "RandomChannelSpec",
    "SolverError",
    "adc",
    "apply_channel",
    "apply_chi",
    "average_qp_data",
    "avg_fidelity",
    "bloch_from_density",
    "bloch_image",
    "build_mixture",
    "chi_to_kraus",
    "clifford_unitaries",
    "density_from_bloch",
    "enumerate_generators",
    "extract_support",
    "fidelity_quadratic",
    "generator_chis",
    "haar_unitary",
    "hs_distance",
    "identity_channel",
    "identity_chi",
    "identity_fidelity_coefficients",
    "kraus_to_chi",
    "min_quadratic_form",
    "mixture_chi",
    "pol_xy",
    "random_chi",
    "random_chi_batch",
    "sample_error",
    "sample_errors",
    "solve",
    "solve_batch",
    "validate_cptp",
    "worst_fidelity",
    "worst_fidelity_point",
]
