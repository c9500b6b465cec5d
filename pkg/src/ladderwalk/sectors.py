"""Quasi-momentum decomposition of the ladder walk.

The periodic two-site ring along x quantizes the transverse momentum to
``k_x in {0, pi}``.  Each sector is an invariant subspace of the one-step
unitary and evolves as an independent one-dimensional conventional walk
along the rungs; the sector coin angles follow from adding up the three
spin rotations of a step, with the x half-shifts contributing ``+-1``
phases in the ``k_x = pi`` sector.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import DEFAULT_GAMMA_Y, LadderState, WalkerState1D

__all__ = [
    "EMPTY_SECTOR_WEIGHT",
    "EffectiveAngles",
    "SectorPair",
    "WalkPattern",
    "effective_angles",
    "effective_angle_fractions",
    "reduce_angle",
    "reduce_pi_fraction",
    "sector_project",
    "reconstruct_ladder",
    "classify_pattern",
]

# Sector weights below this are treated as empty sectors.
EMPTY_SECTOR_WEIGHT = 1e-14

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class EffectiveAngles:
    """Coin angles of the two sector walks and their phase difference."""

    gamma1: float
    gamma2: float
    phi: float


def effective_angles(alpha: float, beta: float,
                     gamma_y: float = DEFAULT_GAMMA_Y) -> EffectiveAngles:
    """Effective 1D coin angles of the ``k_x = 0`` and ``k_x = pi`` sectors.

    With the default long-side coin, ``gamma1 = alpha + beta - pi/2`` and
    ``gamma2 = gamma1 + phi = alpha - beta + 3*pi/2`` where
    ``phi = 2*pi - 2*beta``.  The angles are returned unreduced; reduce
    them modulo ``2*pi`` before evaluating quantities with a restricted
    domain.
    """
    for name, value in (("alpha", alpha), ("beta", beta), ("gamma_y", gamma_y)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    gamma1 = alpha + beta + gamma_y
    phi = 2.0 * math.pi - 2.0 * beta
    return EffectiveAngles(gamma1=gamma1, gamma2=gamma1 + phi, phi=phi)


def effective_angle_fractions(alpha: Fraction, beta: Fraction) -> tuple[Fraction, Fraction]:
    """Sector coin angles in exact units of pi, for pi-rational inputs.

    Equivalent to :func:`effective_angles` with the default long-side coin
    but free of float rounding, so identities such as ``gamma1 = 0`` at
    ``(alpha, beta) = (-1/4, 3/4)`` hold exactly.
    """
    gamma1 = alpha + beta - Fraction(1, 2)
    gamma2 = alpha - beta + Fraction(3, 2)
    return gamma1, gamma2


def reduce_angle(gamma: float) -> float:
    """Reduce an angle modulo ``2*pi`` into ``(-pi, pi]``."""
    r = math.remainder(gamma, 2.0 * math.pi)
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


def reduce_pi_fraction(f: Fraction) -> Fraction:
    """Reduce an angle given in units of pi modulo 2 into ``(-1, 1]``."""
    return 1 - (1 - f) % 2


@dataclass(frozen=True, eq=False)
class SectorPair:
    """Normalized sector states with their probability weights.

    A sector whose weight falls below :data:`EMPTY_SECTOR_WEIGHT` is
    flagged empty and its state left as the zero vector; downstream
    consumers must check the flags before normalizing or conditioning.
    """

    sector_k0: WalkerState1D
    sector_kpi: WalkerState1D
    weight_k0: float
    weight_kpi: float

    @property
    def k0_is_empty(self) -> bool:
        return self.weight_k0 < EMPTY_SECTOR_WEIGHT

    @property
    def kpi_is_empty(self) -> bool:
        return self.weight_kpi < EMPTY_SECTOR_WEIGHT


def sector_project(state: LadderState) -> SectorPair:
    """Project a ladder state onto the ``k_x = 0`` and ``k_x = pi`` sectors.

    The unnormalized sector amplitudes are ``(psi(s, x=0, y) +- psi(s, x=1, y)) / sqrt(2)``;
    each sector is returned renormalized with its squared norm recorded as
    the weight.
    """
    amps = state.amplitudes
    raw_k0 = (amps[:, 0, :] + amps[:, 1, :]) * _SQRT_HALF
    raw_kpi = (amps[:, 0, :] - amps[:, 1, :]) * _SQRT_HALF
    w0 = float(np.sum(np.abs(raw_k0) ** 2))
    wpi = float(np.sum(np.abs(raw_kpi) ** 2))
    k0 = raw_k0 / math.sqrt(w0) if w0 >= EMPTY_SECTOR_WEIGHT else np.zeros_like(raw_k0)
    kpi = raw_kpi / math.sqrt(wpi) if wpi >= EMPTY_SECTOR_WEIGHT else np.zeros_like(raw_kpi)
    return SectorPair(
        sector_k0=WalkerState1D(amplitudes=k0, origin=state.origin,
                                steps_taken=state.steps_taken),
        sector_kpi=WalkerState1D(amplitudes=kpi, origin=state.origin,
                                 steps_taken=state.steps_taken),
        weight_k0=w0,
        weight_kpi=wpi,
    )


def reconstruct_ladder(pair: SectorPair, origin: int | None = None) -> LadderState:
    """Rebuild the ladder state from its sector decomposition."""
    raw_k0 = pair.sector_k0.amplitudes * math.sqrt(pair.weight_k0)
    raw_kpi = pair.sector_kpi.amplitudes * math.sqrt(pair.weight_kpi)
    n_rungs = raw_k0.shape[1]
    amps = np.zeros((2, 2, n_rungs), dtype=np.complex128)
    amps[:, 0, :] = (raw_k0 + raw_kpi) * _SQRT_HALF
    amps[:, 1, :] = (raw_k0 - raw_kpi) * _SQRT_HALF
    return LadderState(
        amplitudes=amps,
        origin=pair.sector_k0.origin if origin is None else origin,
        steps_taken=pair.sector_k0.steps_taken,
    )


class WalkPattern(enum.Enum):
    """Qualitative ladder walk regimes as a function of the two coin angles."""

    ALTERNATING = "alternating"
    ONE_SIDED = "one-sided"
    IDENTICAL_DOMINATED = "identical-dominated"
    HADAMARD_DEGENERATE = "hadamard-degenerate"
    GENERIC = "generic"


_ANGLE_TOL = 1e-9


def _congruent(angle: float, target: float, tol: float = _ANGLE_TOL) -> bool:
    return abs(math.remainder(angle - target, 2.0 * math.pi)) < tol


def classify_pattern(alpha: float, beta: float) -> WalkPattern:
    """Classify the ladder walk regime; earlier rules win on ties.

    ``beta = 0``: the walker hops sides deterministically each step.
    ``beta = pi``: the walker never leaves its starting side.  When
    ``alpha + beta`` or ``alpha - beta`` is an odd multiple of ``pi/2``,
    one sector coin is extremal, the other sector dominates the spreading
    and both sides show identical profiles.  At ``alpha = +-pi/2`` the two
    sector magnetizations coincide for every ``beta`` and no sector can
    dominate.
    """
    for name, value in (("alpha", alpha), ("beta", beta)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    half_pi = math.pi / 2
    if _congruent(beta, 0.0):
        return WalkPattern.ALTERNATING
    if _congruent(beta, math.pi):
        return WalkPattern.ONE_SIDED
    for combo in (alpha + beta, alpha - beta):
        if _congruent(combo, half_pi) or _congruent(combo, -half_pi):
            return WalkPattern.IDENTICAL_DOMINATED
    if _congruent(alpha, half_pi) or _congruent(alpha, -half_pi):
        return WalkPattern.HADAMARD_DEGENERATE
    return WalkPattern.GENERIC
