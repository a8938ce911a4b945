"""Brute-force ground truth: direct transfer-matrix product over the
explicit barrier/gap sequence, with no super-periodicity mathematics.

Amplitudes are referenced locally at each region boundary, so a barrier of
width w contributes barrier_matrix(k, V, w) composed with diag(e^{-ikw},
e^{ikw}) and a gap of width d contributes diag(e^{-ikd}, e^{ikd}); the total
is accumulated in spatial order and T = 1/|m22|^2.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .geometry import SegmentGeometry, UcpSpec, build_segments
from .scattering import ScatterResult, TransferMatrix, barrier_matrix

__all__ = [
    "OracleInfeasibleError",
    "Region",
    "RegionSequence",
    "region_sequence",
    "propagation_matrix",
    "transmission_oracle",
    "DEFAULT_STAGE_CAP",
]

logger = logging.getLogger(__name__)

DEFAULT_STAGE_CAP = 16
_DET_DRIFT_TOL = 1e-9
_WIDTH_EPS = 0.0  # zero-width regions are elided exactly
_TAIL_EPS = 1e-9  # relative: the final barrier ends at span up to roundoff


class OracleInfeasibleError(RuntimeError):
    """Raised when the requested stage needs too many matrix products."""


@dataclass(frozen=True)
class Region:
    kind: str  # "barrier" | "gap"
    width: float


@dataclass(frozen=True)
class RegionSequence:
    regions: tuple[Region, ...]

    def total_width(self) -> float:
        return math.fsum(r.width for r in self.regions)


def region_sequence(geometry: SegmentGeometry) -> RegionSequence:
    """Alternating barrier/gap list spanning [0, span]; zero widths elided."""
    regions: list[Region] = []
    pos = 0.0
    for off, w in geometry.barriers:
        gap = off - pos
        if gap > _WIDTH_EPS:
            regions.append(Region("gap", gap))
        if w > _WIDTH_EPS:
            regions.append(Region("barrier", w))
        pos = off + w
    # the construction places the last barrier flush against the right edge,
    # so any remaining tail is floating-point residue unless it is sizable
    tail = geometry.span - pos
    if tail > _TAIL_EPS * geometry.span:
        regions.append(Region("gap", tail))
    return RegionSequence(tuple(regions))


def propagation_matrix(k: float, d: float) -> TransferMatrix:
    """Free-space transfer matrix diag(e^{ikd}, e^{-ikd}); identity at d = 0."""
    if not k > 0.0:
        raise ValueError(f"wavenumber k must be positive, got {k}")
    phase = cmath.exp(1j * k * d)
    return TransferMatrix(phase, 0.0, 0.0, 1.0 / phase)


def transmission_oracle(
    spec: UcpSpec, k: float, stage_cap: int = DEFAULT_STAGE_CAP
) -> ScatterResult:
    """Transmission by multiplying out all 2**G barrier matrices explicitly.

    Independent of the closed form: the geometry comes from build_segments
    and the product runs region by region.  Raises OracleInfeasibleError for
    G above stage_cap (the closed form remains available there).
    """
    if spec.G > stage_cap:
        raise OracleInfeasibleError(
            f"oracle infeasible: stage G={spec.G} exceeds cap {stage_cap} "
            f"({2 ** spec.G} barriers)"
        )
    regions = region_sequence(build_segments(spec))
    total = TransferMatrix(1.0, 0.0, 0.0, 1.0)
    for region in regions.regions:
        if region.kind == "barrier":
            # local-boundary convention: strip the global phase of the width
            total = total @ barrier_matrix(k, spec.V, region.width)
            total = total @ propagation_matrix(k, -region.width)
        else:
            total = total @ propagation_matrix(k, -region.width)
    # det - 1 cancels catastrophically when entries are ~cosh(|kappa| w) large,
    # so the drift is judged relative to the matrix scale
    scale = max(1.0, abs(total.m22) ** 2)
    drift = abs(total.det() - 1.0) / scale
    if drift > _DET_DRIFT_TOL:
        logger.warning(
            "oracle determinant drift %.3e at G=%d, k=%g", drift, spec.G, k
        )
    m22_sq = abs(total.m22) ** 2
    transmission = 1.0 / m22_sq
    return ScatterResult(
        transmission=transmission,
        reflection=1.0 - transmission,
        log10_transmission=-math.log10(m22_sq),
    )
