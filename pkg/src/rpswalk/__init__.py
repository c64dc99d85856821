"""Random walks over random permutation sets.

Exact combinatorics of ordered arrangements, the entropy they induce,
step-length distributions, permutation-driven step sampling, walk
generation with Wiener rescaling, and statistical verification suites,
all behind one deterministic seeded RNG contract.
"""

from .combinatorics import (
    f_function,
    floor_e_factorial,
    log_of_bigcount,
    max_entropy_normalizer,
    normalizer_ratio,
    permutation_count,
)
from .errors import CapacityError
from .length_dist import (
    LengthDistribution,
    LengthKind,
    per_length_distribution,
    per_limit_probability,
    rps_length_distribution,
    sample_length,
)
from .rps_core import (
    PermutationEvent,
    PermutationMassFunction,
    enumerate_pes,
    max_entropy_pmf,
    max_rps_entropy,
    rps_entropy,
)
from .rvg import (
    EXPECTED_SUPPORT_SIZES,
    RngStream,
    StepMoments,
    StepVector,
    SupportTable,
    enumerate_support,
    exact_direction_means,
    exact_moments,
    sample_step,
    step_from_permutation,
    step_variance,
    uniform_permutation,
)
from .stats import (
    SUITE_NAMES,
    EnsembleSummary,
    Histogram,
    LinearityFit,
    VerificationCheck,
    VerificationReport,
    histogram,
    increment_independence,
    increment_normality,
    moment_series,
    run_suite,
    variance_linearity,
)
from .walk import (
    DEFAULT_RHO,
    WalkConfig,
    WalkPath,
    generate_ensemble,
    generate_lengths,
    generate_walk,
    mixture_step_variance,
    predicted_component_variance,
    scaled_walk,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CapacityError",
    "permutation_count",
    "f_function",
    "floor_e_factorial",
    "max_entropy_normalizer",
    "log_of_bigcount",
    "normalizer_ratio",
    "PermutationEvent",
    "PermutationMassFunction",
    "enumerate_pes",
    "rps_entropy",
    "max_entropy_pmf",
    "max_rps_entropy",
    "LengthKind",
    "LengthDistribution",
    "rps_length_distribution",
    "per_length_distribution",
    "sample_length",
    "per_limit_probability",
    "RngStream",
    "StepVector",
    "StepMoments",
    "SupportTable",
    "EXPECTED_SUPPORT_SIZES",
    "uniform_permutation",
    "step_from_permutation",
    "sample_step",
    "enumerate_support",
    "exact_moments",
    "exact_direction_means",
    "step_variance",
    "DEFAULT_RHO",
    "WalkConfig",
    "WalkPath",
    "generate_lengths",
    "generate_walk",
    "scaled_walk",
    "generate_ensemble",
    "mixture_step_variance",
    "predicted_component_variance",
    "SUITE_NAMES",
    "EnsembleSummary",
    "LinearityFit",
    "Histogram",
    "VerificationCheck",
    "VerificationReport",
    "moment_series",
    "variance_linearity",
    "increment_independence",
    "increment_normality",
    "histogram",
    "run_suite",
]
