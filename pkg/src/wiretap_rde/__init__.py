"""Rate-distortion-equivocation bounds for secure source-channel coding.

Two worked models are covered: a binary source with erasure/BSC side
informations over a type-II wiretap channel, and a Gaussian source over a
Gaussian wiretap channel.
"""
from .binary_wiretap import (
    BinaryModelParams,
    SideInfoOrder,
    analog_delta,
    binary_sweep,
    build_hybrid_pmf,
    classify_side_info,
    digital_delta,
    hybrid_delta,
    outer_delta,
)
from .curves import TradeoffCurve
from .errors import DomainError, InfeasibleError, SingularityError
from .gaussian_wiretap import (
    alpha_beta_for_target,
    gaussian_sweep,
    hybrid_frontier,
    prop7_region,
    prop8_region,
    prop9_outer,
    prop10_hybrid_point,
    prop11_digital_de,
    prop12_analog_de,
    theorem4_de,
)
from .info_discrete import FiniteJointPmf, h2, h2_inv, star
from .info_gaussian import CovMatrix, GaussianModelParams, HybridGaussCoef, conditional_covariance

__version__ = "0.1.0"
