"""Exact weight-stability of coherent section pairs on the projective line."""

from .bundles import (
    HNPolygon,
    SaturationResult,
    SplittingType,
    cohomology,
    generic_splitting,
    kernel_splitting,
    max_subbundle_degree,
    saturate,
    shatz_embedding_exists,
)
from .classification import (
    AlphaInterval,
    Status,
    Verdict,
    classify,
    cross_check,
    necessary_region,
)
from .delta import (
    DeltaInput,
    delta_bruteforce,
    delta_closure,
    delta_formula,
    delta_prime_formula,
)
from .exactmath import (
    BinaryForm,
    FieldMatrix,
    PrimeField,
    PrimeFieldElement,
    Rational,
    kernel_dimension,
    multiplication_matrix,
    vanishing_divisor_degree,
)
from .numerology import Numerology, brill_noether, decompose, valid_degrees_k1
from .stability import (
    StabilityReport,
    SubsystemWitness,
    SystemInstance,
    check_global_generation,
    critical_alphas,
    evaluation_rank_at_point,
    is_alpha_stable,
    sample_instance,
    stability_interval,
)

__all__ = [
    "AlphaInterval",
    "BinaryForm",
    "DeltaInput",
    "FieldMatrix",
    "HNPolygon",
    "Numerology",
    "PrimeField",
    "PrimeFieldElement",
    "Rational",
    "SaturationResult",
    "SplittingType",
    "StabilityReport",
    "Status",
    "SubsystemWitness",
    "SystemInstance",
    "Verdict",
    "brill_noether",
    "check_global_generation",
    "classify",
    "cohomology",
    "critical_alphas",
    "cross_check",
    "decompose",
    "delta_bruteforce",
    "delta_closure",
    "delta_formula",
    "delta_prime_formula",
    "evaluation_rank_at_point",
    "generic_splitting",
    "is_alpha_stable",
    "kernel_dimension",
    "kernel_splitting",
    "max_subbundle_degree",
    "multiplication_matrix",
    "necessary_region",
    "sample_instance",
    "saturate",
    "shatz_embedding_exists",
    "stability_interval",
    "vanishing_divisor_degree",
    "valid_degrees_k1",
]
