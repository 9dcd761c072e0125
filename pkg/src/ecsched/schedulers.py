"""Slot-level scheduling and power-control policies.

Every policy maps the current real and virtual queue state to a feasible
power/rate decision.  The greedy energy-constrained scheduler (gecs) ranks
links by q^2 + u^2 and lets an unprofitable pick idle without blocking its
neighbours; the greedy max-weight variant (gmw) ranks by the per-link
schedule objective itself; maxweight solves the slot exactly; the fixed
power greedy maximal scheduler (gms) ignores energy state entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capacity import enumerate_feasible_allocations
from .netmodel import ConflictNetwork
from .ratepower import LinkRadio, optimal_power_for_link


@dataclass(frozen=True)
class SchedulerInput:
    """Per-slot policy input: queue backlogs q, virtual power queues u."""

    q: tuple[float, ...]
    u: tuple[float, ...]
    net: ConflictNetwork
    radios: tuple[LinkRadio, ...]

    def __post_init__(self):
        n = self.net.num_links
        if not (len(self.q) == len(self.u) == len(self.radios) == n):
            raise ValueError("q, u and radios must all match the link count")
        if min(self.q) < 0 or min(self.u) < 0:
            raise ValueError("queue state must be nonnegative")


@dataclass(frozen=True)
class PowerDecision:
    """Feasible joint decision: per-link transmit power and resulting rate."""

    power: tuple[float, ...]
    rate: tuple[float, ...]

    def objective(self, q, u) -> float:
        return sum(
            qi * ri - ui * pi
            for qi, ui, pi, ri in zip(q, u, self.power, self.rate)
        )


def _pick(candidates: list[int], weights, rng) -> int:
    """Highest-weight candidate; ties go through rng, or lowest id without one."""
    best = None
    for l in candidates:
        if best is None or weights[l] > weights[best]:
            best = l
    tied = [l for l in candidates if weights[l] == weights[best]]
    if len(tied) == 1 or rng is None:
        return tied[0]
    return tied[rng.randrange(len(tied))]


def gecs_decide(inp: SchedulerInput, rng=None, _weights=None) -> PowerDecision:
    """Greedy energy-constrained schedule for one slot.

    Repeatedly takes the remaining link with the largest q^2 + u^2 and
    gives it its objective-maximizing power level.  A positive level
    claims the link and silences its conflict set; a zero level removes
    only the link itself, leaving neighbours schedulable.  `_weights`
    overrides the ranking weights (used to test ranking invariance).
    """
    n = inp.net.num_links
    q, u = inp.q, inp.u
    if _weights is None:
        weights = [q[l] * q[l] + u[l] * u[l] for l in range(n)]
    else:
        weights = list(_weights)
        if len(weights) != n:
            raise ValueError("weight override must cover every link")
    power = [0.0] * n
    rate = [0.0] * n
    alive = sorted(range(n))
    while alive:
        m = _pick(alive, weights, rng)
        p, r = optimal_power_for_link(inp.radios[m], q[m], u[m])
        if p > 0:
            power[m] = p
            rate[m] = r
            blocked = inp.net.conflict_sets[m]
            alive = [l for l in alive if l != m and l not in blocked]
        else:
            alive.remove(m)
    return PowerDecision(power=tuple(power), rate=tuple(rate))


def gmw_decide(inp: SchedulerInput, rng=None) -> PowerDecision:
    """Greedy maximal schedule ranked by the per-link objective itself.

    w_l is the best achievable q*rate - u*power on link l.  Links with
    w <= 0 stay idle and never block anyone; among the rest, the heaviest
    link claims its level and silences its conflicts.
    """
    n = inp.net.num_links
    q, u = inp.q, inp.u
    choice = [optimal_power_for_link(inp.radios[l], q[l], u[l]) for l in range(n)]
    weights = [q[l] * choice[l][1] - u[l] * choice[l][0] for l in range(n)]
    power = [0.0] * n
    rate = [0.0] * n
    alive = [l for l in range(n) if weights[l] > 0]
    while alive:
        m = _pick(alive, weights, rng)
        power[m], rate[m] = choice[m]
        blocked = inp.net.conflict_sets[m]
        alive = [l for l in alive if l != m and l not in blocked]
    return PowerDecision(power=tuple(power), rate=tuple(rate))


def maxweight_decide(inp: SchedulerInput, rng=None, cap: int = 1_000_000) -> PowerDecision:
    """Exact slot optimum over every feasible allocation.

    Ties between equal-value allocations resolve to the lexicographically
    smallest power vector; the enumeration order guarantees it.  rng is
    accepted for signature uniformity and never used.
    """
    q, u = inp.q, inp.u
    best_val = None
    best = None
    for alloc in enumerate_feasible_allocations(inp.net, inp.radios, cap):
        val = sum(
            qi * ri - ui * pi for qi, ui, pi, ri in zip(q, u, alloc.power, alloc.rate)
        )
        # allocations arrive sorted by power vector, so strict improvement
        # keeps the lexicographically smallest maximizer
        if best_val is None or val > best_val + 1e-12:
            best_val = val
            best = alloc
    return PowerDecision(power=best.power, rate=best.rate)


def gms_fixed_power_decide(inp: SchedulerInput, rng=None) -> PowerDecision:
    """Energy-blind baseline: longest queue first, always at full power.

    Only links with packets contend; a scheduled link transmits at p_max
    regardless of its virtual queue.
    """
    n = inp.net.num_links
    q = inp.q
    power = [0.0] * n
    rate = [0.0] * n
    alive = [l for l in range(n) if q[l] > 0]
    while alive:
        m = _pick(alive, q, rng)
        radio = inp.radios[m]
        power[m] = radio.p_max
        rate[m] = radio.rates[-1]
        blocked = inp.net.conflict_sets[m]
        alive = [l for l in alive if l != m and l not in blocked]
    return PowerDecision(power=tuple(power), rate=tuple(rate))


POLICIES = {
    "gecs": gecs_decide,
    "gmw": gmw_decide,
    "maxweight": maxweight_decide,
    "gms": gms_fixed_power_decide,
}
