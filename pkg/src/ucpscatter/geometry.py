"""Geometry of the unified Cantor barrier family.

A stage-G system is built from a slab of span L by removing, at every stage
g = 1..G, the middle fraction rho**-(alpha + beta*g) of each remaining
segment.  alpha=1, beta=0 reproduces the general Cantor set; alpha=0, beta=1
the general Smith-Volterra-Cantor set.

This module provides the closed-form segment/gap/spacing lengths, the gamma
phase distances entering the Bloch recursion, and the explicit interval list
used by the brute-force oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .special import q_pochhammer

__all__ = [
    "InvalidSpecError",
    "UcpSpec",
    "SegmentGeometry",
    "segment_length",
    "gap_length",
    "super_period",
    "gamma1",
    "gamma2",
    "build_segments",
    "max_valid_stage",
]


class InvalidSpecError(ValueError):
    """Raised when a potential specification violates a well-formedness rule."""


@dataclass(frozen=True)
class UcpSpec:
    """Five-parameter barrier definition plus recursion stage.

    L     -- total span (natural units, hbar = 1, 2m = 1)
    V     -- barrier height (energy, natural units)
    rho   -- scaling parameter, > 1
    alpha -- removal exponent offset
    beta  -- removal exponent slope
    G     -- stage (recursion depth), >= 0
    """

    L: float
    V: float
    rho: float
    alpha: float
    beta: float
    G: int

    def __post_init__(self) -> None:
        if not (self.L > 0.0 and math.isfinite(self.L)):
            raise InvalidSpecError(f"L must be positive and finite, got {self.L}")
        if not math.isfinite(self.V):
            raise InvalidSpecError(f"V must be finite, got {self.V}")
        if not (self.rho > 1.0 and math.isfinite(self.rho)):
            raise InvalidSpecError(f"rho must be > 1, got {self.rho}")
        if self.alpha == 0.0 and self.beta == 0.0:
            raise InvalidSpecError("alpha and beta cannot both be zero")
        if self.G < 0 or int(self.G) != self.G:
            raise InvalidSpecError(f"G must be a non-negative integer, got {self.G}")
        for g in range(1, self.G + 1):
            if self.alpha + self.beta * g <= 0.0:
                raise InvalidSpecError(
                    f"alpha + beta*G <= 0 at stage g={g} "
                    f"(alpha={self.alpha}, beta={self.beta}): "
                    "the removal fraction reaches 1 and the geometry degenerates"
                )

    def removal_fraction(self, g: int) -> float:
        """Fraction of each segment removed at stage g: rho**-(alpha + beta*g)."""
        return self.rho ** -(self.alpha + self.beta * g)


@dataclass(frozen=True)
class SegmentGeometry:
    """Explicit barrier intervals of a stage-G system.

    barriers is an ordered list of (offset, width) pairs inside [0, span],
    pairwise disjoint and mirror-symmetric about span/2.
    """

    span: float
    barriers: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def total_width(self) -> float:
        return math.fsum(w for _, w in self.barriers)


def _check_stage(spec: UcpSpec, g: int, lowest: int = 0) -> None:
    if not (lowest <= g <= spec.G):
        raise InvalidSpecError(f"stage index {g} outside [{lowest}, {spec.G}]")


def segment_length(spec: UcpSpec, g: int) -> float:
    """Length l_g of each of the 2**g barrier segments at stage g.

    l_g = (L / 2**g) * prod_{j=1..g} (1 - rho**-(alpha + beta*j)),
    evaluated through the q-Pochhammer product
    (rho**-(alpha+beta); rho**-beta)_g.
    """
    _check_stage(spec, g)
    prod = q_pochhammer(spec.rho ** -(spec.alpha + spec.beta), spec.rho ** -spec.beta, g)
    return spec.L / 2.0**g * prod


def gap_length(spec: UcpSpec, g: int) -> float:
    """Gap d_g opened at stage g: l_{g-1} * rho**-(alpha + beta*g)."""
    _check_stage(spec, g, lowest=1)
    return segment_length(spec, g - 1) * spec.removal_fraction(g)


def super_period(spec: UcpSpec, f: int) -> float:
    """Periodic spacing s_f of the order-f repetition, f = 1..G.

    s_f = (L / 2**(G+1-f)) * (1 + rho**-(alpha + beta*(G+1-f)))
          * prod_{j=1..G-f} (1 - rho**-(alpha + beta*j)),
    equivalently l_{G+1-f} + l_{G-f} * rho**-(alpha + beta*(G+1-f)).
    """
    _check_stage(spec, f, lowest=1)
    m = spec.G + 1 - f
    prod = q_pochhammer(
        spec.rho ** -(spec.alpha + spec.beta), spec.rho ** -spec.beta, spec.G - f
    )
    return spec.L / 2.0**m * (1.0 + spec.removal_fraction(m)) * prod


def gamma1(spec: UcpSpec, q: int) -> float:
    """Phase distance gamma_1(q) = -(l_G + d_{G-q+1}); always negative."""
    _check_stage(spec, q, lowest=1)
    return -(segment_length(spec, spec.G) + gap_length(spec, spec.G - q + 1))


def gamma2(spec: UcpSpec, q: int, r: int) -> float:
    """Phase distance gamma_2(q, r) = d_{G-r+1} - d_{G-q+1} for 1 <= r < q <= G."""
    if not 1 <= r < q <= spec.G:
        raise InvalidSpecError(f"gamma2 requires 1 <= r < q <= G, got q={q}, r={r}")
    return gap_length(spec, spec.G - r + 1) - gap_length(spec, spec.G - q + 1)


def build_segments(spec: UcpSpec) -> SegmentGeometry:
    """Explicit interval list of the stage-G system.

    Built top-down: at stage g every interval of width w is replaced by two
    end intervals of width (w - w * rho**-(alpha+beta*g)) / 2.  The closed
    forms (segment_length etc.) are cross-checks of this construction, not
    inputs to it.
    """
    intervals = [(0.0, spec.L)]
    for g in range(1, spec.G + 1):
        frac = spec.removal_fraction(g)
        nxt = []
        for off, w in intervals:
            child = w * (1.0 - frac) / 2.0
            nxt.append((off, child))
            nxt.append((off + w - child, child))
        intervals = nxt
    return SegmentGeometry(span=spec.L, barriers=tuple(intervals))


def max_valid_stage(alpha: float, beta: float) -> int | None:
    """Largest stage G with alpha + beta*g > 0 for every g = 1..G.

    Returns None when unbounded (beta >= 0 with alpha + beta > 0) and 0 when
    even stage 1 is impossible.
    """
    if alpha == 0.0 and beta == 0.0:
        raise InvalidSpecError("alpha and beta cannot both be zero")
    if alpha + beta <= 0.0:
        return 0
    if beta >= 0.0:
        return None
    g = 1
    while alpha + beta * (g + 1) > 0.0:
        g += 1
    return g
