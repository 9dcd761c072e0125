"""Discrete rate-power tables per link and the per-link schedule objective.

Each link transmits at one of finitely many power levels; the level fixes
the slot's service rate through a rate-power curve, either the AWGN form
or an explicit table.  Power control picks the level maximizing
q * rate - u * power, the quantity every scheduling policy here is built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class RatePowerCurve:
    """Power-to-rate mapping, kind "awgn" or "table".

    awgn: rate(p) = w * log2(1 + p * h / n0w); the inverse is
    power(c) = n0w / h * (2 ** (c / w) - 1).

    table: explicit (power, rate) pairs; rate_for_power is an exact lookup,
    no interpolation.  Pairs must be strictly increasing in both coordinates
    and must map power 0 to rate 0.  Convexity of power as a function of
    rate is NOT enforced here; validate_convexity reports on it.
    """

    kind: str
    h: float | None = None
    n0w: float | None = None
    w: float | None = None
    points: tuple[tuple[float, float], ...] | None = None

    @classmethod
    def awgn(cls, h: float, n0w: float = 1.0, w: float = 1.0) -> "RatePowerCurve":
        if h <= 0 or n0w <= 0 or w <= 0:
            raise ValueError("awgn parameters must be positive")
        return cls(kind="awgn", h=float(h), n0w=float(n0w), w=float(w))

    @classmethod
    def table(cls, points) -> "RatePowerCurve":
        pts = tuple((float(p), float(c)) for p, c in points)
        if len(pts) < 1:
            raise ValueError("table curve needs at least one point")
        pts = tuple(sorted(pts))
        if pts[0] != (0.0, 0.0):
            raise ValueError("table curve must map power 0 to rate 0")
        for (p0, c0), (p1, c1) in zip(pts, pts[1:]):
            if p1 <= p0:
                raise ValueError(f"duplicate power level {p1} in table")
            if c1 <= c0:
                raise ValueError(f"rate must increase strictly with power, {c1} after {c0}")
        return cls(kind="table", points=pts)

    def rate_for_power(self, p: float) -> float:
        if p < 0:
            raise ValueError("power must be nonnegative")
        if self.kind == "awgn":
            return self.w * math.log2(1.0 + p * self.h / self.n0w)
        for power, rate in self.points:
            if power == p:
                return rate
        raise ValueError(f"power {p} is not a level of this table curve")

    def power_for_rate(self, c: float) -> float:
        if self.kind == "awgn":
            return self.n0w / self.h * (2.0 ** (c / self.w) - 1.0)
        for power, rate in self.points:
            if rate == c:
                return power
        raise ValueError(f"rate {c} is not in this table curve")


@dataclass(frozen=True)
class LinkRadio:
    """One link's transmit capabilities plus its average-power budget.

    levels are the allowed per-slot powers, sorted, always including 0
    (idle).  rates[i] is the service delivered when transmitting at
    levels[i].  p_avg is the long-run average-power budget feeding the
    virtual queue; a budget at or above p_max makes the power constraint
    vacuous, which is allowed but exposed via the flag below.
    """

    levels: tuple[float, ...]
    rates: tuple[float, ...]
    p_avg: float

    def __post_init__(self):
        if len(self.levels) != len(self.rates):
            raise ValueError("levels and rates must have equal length")
        if not self.levels or self.levels[0] != 0.0:
            raise ValueError("power level 0 (idle) is mandatory and must come first")
        if self.rates[0] != 0.0:
            raise ValueError("rate at power 0 must be 0")
        for a, b in zip(self.levels, self.levels[1:]):
            if b <= a:
                raise ValueError("power levels must be strictly increasing")
        for a, b in zip(self.rates, self.rates[1:]):
            if b <= a:
                raise ValueError("rates must be strictly increasing with power")
        if self.p_avg < 0:
            raise ValueError("average-power budget must be nonnegative")

    @classmethod
    def from_curve(cls, curve: RatePowerCurve, levels, p_avg: float) -> "LinkRadio":
        lv = tuple(sorted(float(p) for p in levels))
        rt = tuple(curve.rate_for_power(p) for p in lv)
        return cls(levels=lv, rates=rt, p_avg=float(p_avg))

    @property
    def p_max(self) -> float:
        return self.levels[-1]

    @property
    def budget_vacuous(self) -> bool:
        # with p_avg >= p_max the virtual queue can never build up
        return self.p_avg >= self.p_max


def rate_for_power(radio: LinkRadio, p: float) -> float:
    """Exact lookup of the service rate at power level p."""
    for level, rate in zip(radio.levels, radio.rates):
        if level == p:
            return rate
    raise ValueError(f"power {p} is not one of the radio's levels {radio.levels}")


def validate_convexity(curve: RatePowerCurve, levels) -> list[str]:
    """Check that power is convex in rate over the given levels.

    Returns a list of human-readable violations; empty means the discrete
    slopes delta-power / delta-rate are non-decreasing.  With fewer than
    two nonzero levels the check is vacuous.
    """
    lv = sorted(set(float(p) for p in levels))
    pts = [(curve.rate_for_power(p), p) for p in lv]
    violations = []
    prev_slope = None
    for (c0, p0), (c1, p1) in zip(pts, pts[1:]):
        slope = (p1 - p0) / (c1 - c0)
        if prev_slope is not None and slope < prev_slope * (1.0 - 1e-12):
            violations.append(
                f"power-per-rate slope decreases at power {p1}: {slope:.6g} after {prev_slope:.6g}"
            )
        prev_slope = slope
    return violations


def optimal_power_for_link(radio: LinkRadio, q: float, u: float) -> tuple[float, float]:
    """Level maximizing q * rate - u * power; ties resolve to the lowest power.

    The idle level pins the maximum at >= 0, so a link never transmits at a
    loss.  Returns (power, rate).
    """
    if q < 0 or u < 0:
        raise ValueError("queue weights must be nonnegative")
    best_obj = 0.0
    best_power = 0.0
    best_rate = 0.0
    for power, rate in zip(radio.levels, radio.rates):
        obj = q * rate - u * power
        if obj > best_obj:
            best_obj = obj
            best_power = power
            best_rate = rate
    return best_power, best_rate
