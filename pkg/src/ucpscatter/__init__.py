"""Quantum transmission through unified Cantor barrier systems.

A five-parameter family (span L, height V, scaling rho > 1, exponents alpha
and beta, stage G) interpolating between general Cantor (alpha=1, beta=0) and
general Smith-Volterra-Cantor (alpha=0, beta=1) barrier geometries, with a
closed-form transmission coefficient built on super-periodic transfer-matrix
recursions and an independent brute-force oracle for cross-validation.
"""

__version__ = "0.1.0"

from .analysis import (
    SaturationReport,
    ScalingFit,
    constant_area_height,
    fit_scaling,
    reflection_asymptote,
    saturation_scan,
)
from .geometry import (
    InvalidSpecError,
    SegmentGeometry,
    UcpSpec,
    build_segments,
    gamma1,
    gamma2,
    gap_length,
    max_valid_stage,
    segment_length,
    super_period,
)
from .oracle import (
    OracleInfeasibleError,
    Region,
    RegionSequence,
    propagation_matrix,
    region_sequence,
    transmission_oracle,
)
from .scattering import (
    BlochSequence,
    ScatterResult,
    TransferMatrix,
    barrier_matrix,
    bloch_sequence,
    transmission_spp,
    transmission_ucp,
    ucp_super_periods,
)
from .special import chebyshev_u, q_pochhammer

__all__ = [
    "__version__",
    "InvalidSpecError",
    "OracleInfeasibleError",
    "UcpSpec",
    "SegmentGeometry",
    "Region",
    "RegionSequence",
    "TransferMatrix",
    "BlochSequence",
    "ScatterResult",
    "ScalingFit",
    "SaturationReport",
    "chebyshev_u",
    "q_pochhammer",
    "segment_length",
    "gap_length",
    "super_period",
    "gamma1",
    "gamma2",
    "build_segments",
    "max_valid_stage",
    "barrier_matrix",
    "bloch_sequence",
    "transmission_ucp",
    "transmission_spp",
    "ucp_super_periods",
    "propagation_matrix",
    "region_sequence",
    "transmission_oracle",
    "constant_area_height",
    "reflection_asymptote",
    "fit_scaling",
    "saturation_scan",
]
