"""State vectors and one-step unitaries for discrete-time walks.

A walker on a line carries a spin-1/2 coin and a position on the sites
``-R .. R`` of a finite array; a walker on a two-rail ladder additionally
carries a side index ``x in {0, 1}``.  The array is sized so that the wave
front never reaches the boundary: a shift that would push amplitude past
the edge raises :class:`LatticeOverflowError` instead of wrapping, which
keeps the finite array an exact model of the infinite lattice.  The short
(x) direction of the ladder is an exact two-site ring, so shifts along it
are periodic.

All step functions are pure: they return a new state and never mutate
their input.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "LatticeOverflowError",
    "CoinSpinor",
    "CoinOperator",
    "WalkerState1D",
    "LadderState",
    "Conventional",
    "SplitStep",
    "Ladder",
    "ProtocolSpec",
    "DEFAULT_GAMMA_Y",
    "make_coin",
    "localized_walker",
    "localized_ladder",
    "shift_full",
    "shift_half_up",
    "shift_half_down",
    "step_conventional",
    "step_splitstep",
    "step_ladder",
    "evolve",
    "position_distribution",
]

# Coin angle of the long-side coin in the mixed ladder protocol; the
# corresponding rotation is C(-pi/4).
DEFAULT_GAMMA_Y = -math.pi / 2

_NORM_TOL = 1e-12


class LatticeOverflowError(Exception):
    """A shift would move amplitude past the open lattice boundary.

    The caller must rebuild the state on a larger array; wrapping around
    would silently change the physics.
    """


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CoinSpinor:
    """Amplitudes of the up and down coin states."""

    up: complex = 1.0 + 0j
    down: complex = 0j

    @classmethod
    def from_bloch(cls, theta: float, phi: float) -> "CoinSpinor":
        """Spinor ``(cos(theta/2), e^{i phi} sin(theta/2))`` on the Bloch sphere."""
        theta = _require_finite("theta", theta)
        phi = _require_finite("phi", phi)
        return cls(complex(math.cos(theta / 2)),
                   cmath.exp(1j * phi) * math.sin(theta / 2))

    def norm_sq(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """Real rotation ``[[c, -s], [s, c]]`` with ``c = cos(gamma/2)``, ``s = sin(gamma/2)``."""

    gamma: float
    entries: np.ndarray

    def __call__(self, spinor: np.ndarray) -> np.ndarray:
        return self.entries @ spinor


def make_coin(gamma: float) -> CoinOperator:
    """Build the coin rotation for coin angle ``gamma`` (radians).

    The matrix mixes the up/down amplitudes through the half angle
    ``gamma/2``; ``gamma = 0`` gives the identity and ``gamma = pi`` the
    quarter-turn ``[[0, -1], [1, 0]]``.
    """
    gamma = _require_finite("gamma", gamma)
    c = math.cos(gamma / 2)
    s = math.sin(gamma / 2)
    entries = np.array([[c, -s], [s, c]], dtype=np.float64)
    entries.setflags(write=False)
    return CoinOperator(gamma=gamma, entries=entries)


@dataclass(frozen=True, eq=False)
class WalkerState1D:
    """Walker on the line: complex amplitudes indexed by (spin, site).

    ``amplitudes[s, i]`` is the amplitude of spin ``s`` (0 = up, 1 = down)
    at site ``m = i - half_width``; sites run over ``-half_width .. half_width``.
    """

    amplitudes: np.ndarray
    origin: int = 0
    steps_taken: int = 0

    @property
    def half_width(self) -> int:
        return (self.amplitudes.shape[1] - 1) // 2

    def sites(self) -> np.ndarray:
        r = self.half_width
        return np.arange(-r, r + 1)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def site_amplitudes(self, m: int) -> np.ndarray:
        """Spinor (up, down) at site ``m``."""
        return self.amplitudes[:, m + self.half_width].copy()


@dataclass(frozen=True, eq=False)
class LadderState:
    """Walker on the two-rail ladder: amplitudes indexed by (spin, side, rung).

    ``amplitudes[s, x, i]`` is the amplitude of spin ``s`` on side
    ``x in {0, 1}`` at rung ``y = i - half_width``.
    """

    amplitudes: np.ndarray
    origin: int = 0
    steps_taken: int = 0

    @property
    def half_width(self) -> int:
        return (self.amplitudes.shape[2] - 1) // 2

    def rungs(self) -> np.ndarray:
        r = self.half_width
        return np.arange(-r, r + 1)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class Conventional:
    """Coin flip followed by a full spin-conditioned shift."""

    gamma: float


@dataclass(frozen=True)
class SplitStep:
    """Two coins and two half-shifts per step."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class Ladder:
    """Split-step protocol along the rails combined with a conventional
    step along the rungs; ``gamma_y`` is the long-side coin angle."""

    alpha: float
    beta: float
    gamma_y: float = DEFAULT_GAMMA_Y


ProtocolSpec = Conventional | SplitStep | Ladder


def _check_initial_coin(coin: CoinSpinor) -> None:
    if abs(coin.norm_sq() - 1.0) > _NORM_TOL:
        raise ValueError(
            f"initial coin state must be normalized, |up|^2+|down|^2 = {coin.norm_sq()!r}"
        )


def localized_walker(coin: CoinSpinor | None = None,
                     half_width: int = 32,
                     origin: int = 0) -> WalkerState1D:
    """Walker localized at ``origin`` with the given (normalized) coin state."""
    coin = coin if coin is not None else CoinSpinor()
    _check_initial_coin(coin)
    if half_width < 1:
        raise ValueError("half_width must be >= 1")
    if abs(origin) > half_width:
        raise ValueError("origin outside the lattice")
    amps = np.zeros((2, 2 * half_width + 1), dtype=np.complex128)
    amps[:, origin + half_width] = coin.as_array()
    return WalkerState1D(amplitudes=amps, origin=origin, steps_taken=0)


def localized_ladder(coin: CoinSpinor | None = None,
                     half_width: int = 32,
                     side: int = 0,
                     origin: int = 0) -> LadderState:
    """Ladder walker localized on one side at rung ``origin``."""
    coin = coin if coin is not None else CoinSpinor()
    _check_initial_coin(coin)
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    if half_width < 1:
        raise ValueError("half_width must be >= 1")
    if abs(origin) > half_width:
        raise ValueError("origin outside the lattice")
    amps = np.zeros((2, 2, 2 * half_width + 1), dtype=np.complex128)
    amps[:, side, origin + half_width] = coin.as_array()
    return LadderState(amplitudes=amps, origin=origin, steps_taken=0)


def _apply_coin_1d(amps: np.ndarray, coin: CoinOperator) -> np.ndarray:
    return coin.entries @ amps


def _apply_coin_ladder(amps: np.ndarray, coin: CoinOperator) -> np.ndarray:
    return np.einsum("st,txy->sxy", coin.entries, amps)


def _shifted(amps: np.ndarray, move_up: bool, move_down: bool) -> np.ndarray:
    """Shift up components to the right and/or down components to the left.

    Raises if a moved component has amplitude on its leading edge; untouched
    lattice entries are exactly zero so the check is exact.
    """
    out = np.zeros_like(amps)
    if move_up:
        if amps[0, -1] != 0:
            raise LatticeOverflowError(
                "up amplitude reached the +edge; enlarge half_width")
        out[0, 1:] = amps[0, :-1]
    else:
        out[0] = amps[0]
    if move_down:
        if amps[1, 0] != 0:
            raise LatticeOverflowError(
                "down amplitude reached the -edge; enlarge half_width")
        out[1, :-1] = amps[1, 1:]
    else:
        out[1] = amps[1]
    return out


def shift_full(state: WalkerState1D) -> WalkerState1D:
    """Move up amplitudes one site right and down amplitudes one site left."""
    return replace(state, amplitudes=_shifted(state.amplitudes, True, True))


def shift_half_up(state: WalkerState1D) -> WalkerState1D:
    """Move only the up component one site right; the down component is held."""
    return replace(state, amplitudes=_shifted(state.amplitudes, True, False))


def shift_half_down(state: WalkerState1D) -> WalkerState1D:
    """Move only the down component one site left; the up component is held."""
    return replace(state, amplitudes=_shifted(state.amplitudes, False, True))


def step_conventional(state: WalkerState1D, gamma: float) -> WalkerState1D:
    """One conventional step: coin with angle ``gamma``, then a full shift."""
    coin = make_coin(gamma)
    amps = _apply_coin_1d(state.amplitudes, coin)
    amps = _shifted(amps, True, True)
    return replace(state, amplitudes=amps, steps_taken=state.steps_taken + 1)


def step_splitstep(state: WalkerState1D, alpha: float, beta: float) -> WalkerState1D:
    """One split step: coin(alpha), up half-shift, coin(beta), down half-shift.

    At ``beta = 0`` the second coin is the identity and the two half-shifts
    compose to a full shift, so the step reduces to a conventional step
    with angle ``alpha``.
    """
    amps = _apply_coin_1d(state.amplitudes, make_coin(alpha))
    amps = _shifted(amps, True, False)
    amps = _apply_coin_1d(amps, make_coin(beta))
    amps = _shifted(amps, False, True)
    return replace(state, amplitudes=amps, steps_taken=state.steps_taken + 1)


def _swap_side(amps: np.ndarray, spin: int) -> np.ndarray:
    """Periodic x-shift on the two-site ring for one spin component."""
    out = amps.copy()
    out[spin] = amps[spin, ::-1, :]
    return out


def _shift_rungs(amps: np.ndarray) -> np.ndarray:
    """Full spin-conditioned shift along the rungs (open boundary)."""
    if np.any(amps[0, :, -1] != 0):
        raise LatticeOverflowError(
            "up amplitude reached the +rung edge; enlarge half_width")
    if np.any(amps[1, :, 0] != 0):
        raise LatticeOverflowError(
            "down amplitude reached the -rung edge; enlarge half_width")
    out = np.zeros_like(amps)
    out[0, :, 1:] = amps[0, :, :-1]
    out[1, :, :-1] = amps[1, :, 1:]
    return out


def step_ladder(state: LadderState, spec: Ladder) -> LadderState:
    """One step of the mixed ladder protocol.

    Applied right to left: coin(alpha); periodic x half-shift of the up
    component; coin(beta); periodic x half-shift of the down component;
    coin(gamma_y); full shift along the rungs.
    """
    if not isinstance(spec, Ladder):
        raise TypeError(f"expected Ladder spec, got {type(spec).__name__}")
    if not isinstance(state, LadderState):
        raise TypeError(f"expected LadderState, got {type(state).__name__}")
    amps = _apply_coin_ladder(state.amplitudes, make_coin(spec.alpha))
    amps = _swap_side(amps, 0)
    amps = _apply_coin_ladder(amps, make_coin(spec.beta))
    amps = _swap_side(amps, 1)
    amps = _apply_coin_ladder(amps, make_coin(spec.gamma_y))
    amps = _shift_rungs(amps)
    return replace(state, amplitudes=amps, steps_taken=state.steps_taken + 1)


def _step_once(state, spec):
    if isinstance(spec, Conventional):
        if not isinstance(state, WalkerState1D):
            raise TypeError("conventional protocol needs a WalkerState1D")
        return step_conventional(state, spec.gamma)
    if isinstance(spec, SplitStep):
        if not isinstance(state, WalkerState1D):
            raise TypeError("split-step protocol needs a WalkerState1D")
        return step_splitstep(state, spec.alpha, spec.beta)
    if isinstance(spec, Ladder):
        if not isinstance(state, LadderState):
            raise TypeError("ladder protocol needs a LadderState")
        return step_ladder(state, spec)
    raise TypeError(f"unknown protocol spec {spec!r}")


def evolve(state, spec: ProtocolSpec, n_steps: int):
    """Apply ``n_steps`` repetitions of the one-step unitary for ``spec``."""
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    for _ in range(n_steps):
        state = _step_once(state, spec)
    return state


def position_distribution(state) -> np.ndarray:
    """Probability of finding the walker at each site.

    For a line walker the result is a vector over sites ``-R .. R``; for a
    ladder walker it is a ``(2, 2R+1)`` array over (side, rung).  Entries
    are nonnegative and sum to one (up to roundoff).
    """
    if not isinstance(state, (WalkerState1D, LadderState)):
        raise TypeError(f"unsupported state {type(state).__name__}")
    return np.sum(np.abs(state.amplitudes) ** 2, axis=0)
