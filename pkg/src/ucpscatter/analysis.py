"""Derived studies: constant-area barrier heights, large-k reflection
scaling, and saturation of the transmission profile with stage."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import UcpSpec, segment_length
from .scattering import bloch_sequence, transmission_ucp

__all__ = [
    "ScalingFit",
    "SaturationReport",
    "constant_area_height",
    "reflection_asymptote",
    "fit_scaling",
    "saturation_scan",
]

# first-order Taylor validity guard for the Born-type asymptote
_ASYMPTOTE_GUARD = 0.1
# reflection dips this far below the rolling median are transmission
# resonances and excluded from envelope fits
_RESONANCE_FACTOR = 1e-3
_MEDIAN_WINDOW = 15


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit of log10(R) against log10(k)."""

    k_window: tuple[float, float]
    slope: float
    intercept: float
    r_squared: float
    n_used: int


@dataclass(frozen=True)
class SaturationReport:
    """Sup-norm distances between consecutive-stage transmission profiles.

    metrics[i] = max over the k-grid of |log10 T_{stages[i]} - log10 T_{stages[i]+1}|.
    """

    stages: tuple[int, ...]
    metrics: tuple[float, ...]


def constant_area_height(spec: UcpSpec, V0: float) -> float:
    """Stage-G barrier height keeping the total barrier area at L*V0.

    V_G = L * V0 / (2**G * l_G), so 2**G * l_G * V_G = L * V0 exactly.
    """
    if not V0 > 0.0:
        raise ValueError(f"V0 must be positive, got {V0}")
    return spec.L * V0 / (2.0**spec.G * segment_length(spec, spec.G))


def _with_height(spec: UcpSpec, V: float) -> UcpSpec:
    return dataclasses.replace(spec, V=V)


def reflection_asymptote(spec: UcpSpec, V0: float, k: float) -> float:
    """First-order large-k approximation of the reflection coefficient.

    R ~ 4**G * (V_G l_G / 2)**2 / k**2 * prod Omega_i**2 with the Bloch
    phases evaluated at the constant-area height V_G.  Valid only for
    V_G / k**2 < 0.1; used for comparison against the exact reflection.
    """
    v_g = constant_area_height(spec, V0)
    if not v_g / (k * k) < _ASYMPTOTE_GUARD:
        raise ValueError(
            f"asymptote guard violated: V_G/k^2 = {v_g / (k * k):.3g} >= {_ASYMPTOTE_GUARD}"
        )
    scaled = _with_height(spec, v_g)
    l_g = segment_length(spec, spec.G)
    seq = bloch_sequence(scaled, k)
    prod = 1.0
    for w in seq.omegas:
        prod *= w * w
    return 4.0**spec.G * (v_g * l_g / 2.0) ** 2 / (k * k) * prod


def _rolling_median(values: np.ndarray, window: int) -> np.ndarray:
    half = window // 2
    out = np.empty_like(values)
    for i in range(len(values)):
        lo = max(0, i - half)
        hi = min(len(values), i + half + 1)
        out[i] = np.median(values[lo:hi])
    return out


def fit_scaling(
    spec: UcpSpec,
    V0: float,
    k_window: tuple[float, float],
    n_points: int = 200,
) -> ScalingFit:
    """Fitted log-log slope of the exact reflection envelope over k_window.

    The barrier height is the constant-area V_G.  Points in resonance dips
    (R below 1e-3 times the rolling median) are excluded; the expected slope
    in the Born regime is -2.
    """
    k_min, k_max = k_window
    if not 0.0 < k_min < k_max:
        raise ValueError(f"bad k window {k_window}")
    if n_points < 50:
        raise ValueError(f"n_points must be >= 50, got {n_points}")
    scaled = _with_height(spec, constant_area_height(spec, V0))
    ks = np.logspace(math.log10(k_min), math.log10(k_max), n_points)
    refl = np.array([transmission_ucp(scaled, k).reflection for k in ks])

    positive = refl > 0.0
    ks, refl = ks[positive], refl[positive]
    keep = refl >= _RESONANCE_FACTOR * _rolling_median(refl, _MEDIAN_WINDOW)
    ks, refl = ks[keep], refl[keep]
    if len(ks) < 10:
        raise ValueError(
            f"only {len(ks)} points survive resonance filtering; cannot fit"
        )
    x = np.log10(ks)
    y = np.log10(refl)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0.0 else 1.0
    return ScalingFit(
        k_window=(k_min, k_max),
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        n_used=len(ks),
    )


def saturation_scan(specs: Sequence[UcpSpec], k_grid: Sequence[float]) -> SaturationReport:
    """Sup-norm of log10 T between consecutive stages over a shared k-grid.

    All specs must share (L, V, rho, alpha, beta) and have consecutive
    stages; the metric quantifies how quickly the transmission profile
    stops changing as the stage grows.
    """
    if len(specs) < 2:
        raise ValueError("need at least two stages to compare")
    head = specs[0]
    for s in specs[1:]:
        if (s.L, s.V, s.rho, s.alpha, s.beta) != (
            head.L,
            head.V,
            head.rho,
            head.alpha,
            head.beta,
        ):
            raise ValueError("all specs must share (L, V, rho, alpha, beta)")
    stages = [s.G for s in specs]
    if stages != list(range(stages[0], stages[0] + len(stages))):
        raise ValueError(f"stages must be consecutive, got {stages}")

    profiles = [
        np.array([transmission_ucp(s, k).log10_transmission for k in k_grid])
        for s in specs
    ]
    metrics = [
        float(np.max(np.abs(profiles[i] - profiles[i + 1])))
        for i in range(len(profiles) - 1)
    ]
    return SaturationReport(stages=tuple(stages[:-1]), metrics=tuple(metrics))
