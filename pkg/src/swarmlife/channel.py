"""Wireless uplink model: gains, capacity, and power adaptation.

Capacity follows the flat-fading Shannon form ``log2(1 + gain * power)``
with unit bandwidth and unit noise. A transmission is feasible when the
rate target fits under the capacity reachable within the robot's power
cap; adapted power is the minimum power that meets the target.

The AWGN channel fixes every gain at 1, so the adapted power equals the
reference SNR and feasibility never binds at the reference cap. Rayleigh
fading draws an independent unit-mean exponential power gain per robot per
task, so deep fades can make a subset unselectable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1

from .seeding import as_rng

KIND_AWGN = "awgn"
KIND_RAYLEIGH = "rayleigh"

# Rate-versus-capacity and power-versus-cap comparisons allow this relative
# slack, so the exact boundary (reference power at the reference cap) counts
# as feasible despite float rounding.
FEASIBILITY_RTOL = 1e-9


@dataclass(frozen=True)
class ChannelModel:
    """Channel kind plus the operating point shared by all robots.

    ``rate_target`` defaults to the capacity at the nominal SNR, which
    makes the reference adapted power exactly ``nominal_snr`` in AWGN.
    """

    kind: str
    nominal_snr: float = 10.0
    rate_target: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (KIND_AWGN, KIND_RAYLEIGH):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not self.nominal_snr > 0:
            raise ValueError("nominal_snr must be positive")
        if self.rate_target is not None and not self.rate_target > 0:
            raise ValueError("rate_target must be positive")

    @property
    def rate(self) -> float:
        """Spectral-efficiency target in bits per channel use."""
        if self.rate_target is not None:
            return self.rate_target
        return math.log2(1.0 + self.nominal_snr)

    @property
    def snr_threshold(self) -> float:
        """Minimum ``gain * power`` product that meets the rate target."""
        if self.rate_target is not None:
            return 2.0 ** self.rate_target - 1.0
        return self.nominal_snr

    @property
    def reference_power(self) -> float:
        """Adapted power at unit gain, i.e. the AWGN transmit power."""
        return self.snr_threshold

    def draw_gains(
        self, n: int, rng: int | np.random.Generator | None = None
    ) -> "ChannelDraw":
        """One fresh gain per robot; constant 1 in AWGN, exp(1) in Rayleigh."""
        if self.kind == KIND_AWGN:
            return ChannelDraw(gains=np.ones(n))
        return ChannelDraw(gains=as_rng(rng).standard_exponential(n))

    def required_powers(self, gains: np.ndarray) -> np.ndarray:
        """Vector of minimum feasible powers, ``inf`` where the gain is 0."""
        g = np.asarray(gains, dtype=float)
        out = np.full(g.shape, np.inf)
        np.divide(self.snr_threshold, g, out=out, where=g > 0)
        return out


@dataclass(frozen=True, eq=False)
class ChannelDraw:
    """Per-robot channel gains for a single task."""

    gains: np.ndarray


@dataclass(frozen=True)
class Infeasible:
    """Verdict for a subset whose members cannot all meet the rate target."""

    violators: tuple[int, ...]


def capacity(alpha: float, power: float) -> float:
    """Channel capacity at gain ``alpha`` and transmit power ``power``."""
    if alpha < 0 or power < 0:
        raise ValueError("gain and power must be non-negative")
    return math.log2(1.0 + alpha * power)


def required_power(alpha: float, rate_target: float, margin: float = 0.0) -> float:
    """Minimum power whose capacity meets ``rate_target * (1 + margin)``.

    Returns ``inf`` for a zero gain, which is never feasible.
    """
    if alpha < 0:
        raise ValueError("gain must be non-negative")
    if alpha == 0:
        return math.inf
    return (2.0 ** (rate_target * (1.0 + margin)) - 1.0) / alpha


def feasible_subset(
    draw: ChannelDraw, subset, model: ChannelModel, caps
) -> dict[int, float] | Infeasible:
    """Adapted powers for every subset member, or the robots that block it.

    ``caps`` maps robot id to power cap (any mapping or array works). A
    subset is only usable when every member can meet the rate target within
    its cap; an empty subset is trivially feasible.
    """
    threshold = model.snr_threshold
    powers: dict[int, float] = {}
    violators: list[int] = []
    for robot in sorted(int(i) for i in subset):
        gain = float(draw.gains[robot])
        need = math.inf if gain <= 0 else threshold / gain
        if need <= float(caps[robot]) * (1.0 + FEASIBILITY_RTOL):
            powers[robot] = need
        else:
            violators.append(robot)
    if violators:
        return Infeasible(violators=tuple(violators))
    return powers


def avg_adapted_power(model: ChannelModel, cap: float) -> float:
    """Expected adapted power with the deep-fade tail clipped at ``cap``.

    For exponential unit-mean gains the raw expectation of ``threshold /
    gain`` diverges, so the fade tail is truncated at the cap:
    ``E[min(threshold / gain, cap)]`` evaluated in closed form via the
    exponential integral.
    """
    if model.kind == KIND_AWGN:
        return min(model.reference_power, cap)
    if not (math.isfinite(cap) and cap > 0):
        raise ValueError("a finite positive cap is required in fading channels")
    threshold = model.snr_threshold
    a = threshold / cap
    return cap * (1.0 - math.exp(-a)) + threshold * float(exp1(a))


def snr_db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)
