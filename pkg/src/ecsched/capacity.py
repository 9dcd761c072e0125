"""Exact capacity region under average-power budgets, at desk scale.

A feasible allocation is an independent set of links together with one
nonzero power level per active link.  The admissible rate region is the
set of arrival vectors dominated by a convex combination of allocation
rate vectors whose matching power combination fits every link's budget.
Membership, per-link maxima and boundary scaling all reduce to small LPs
over the enumerated allocations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .netmodel import ConflictNetwork, EnumerationCapError
from .ratepower import LinkRadio
from .solver import INFEASIBLE, OPTIMAL, LinearProgram, solve_lp


@dataclass(frozen=True)
class FeasibleAllocation:
    """One slot's worth of joint transmit choices: per-link power and rate."""

    power: tuple[float, ...]
    rate: tuple[float, ...]


@dataclass(frozen=True)
class RegionResult:
    """Membership verdict plus, when inside, the time-sharing certificate."""

    verdict: str  # "inside" | "outside"
    weights: tuple[float, ...] | None = None
    allocations: tuple[FeasibleAllocation, ...] | None = None


def _check_radios(net: ConflictNetwork, radios) -> tuple[LinkRadio, ...]:
    radios = tuple(radios)
    if len(radios) != net.num_links:
        raise ValueError(
            f"expected {net.num_links} radios, got {len(radios)}"
        )
    return radios


@functools.lru_cache(maxsize=64)
def _allocations_cached(net: ConflictNetwork, radios: tuple, cap: int):
    n = net.num_links
    nonzero = [
        [(p, r) for p, r in zip(rd.levels, rd.rates) if p > 0] for rd in radios
    ]
    found: dict[tuple, FeasibleAllocation] = {}
    count = 0

    def emit(active: list[int]):
        nonlocal count
        # cartesian product of the active links' nonzero levels
        power = [0.0] * n
        rate = [0.0] * n

        def assign(idx: int):
            nonlocal count
            if idx == len(active):
                count += 1
                if count > cap:
                    raise EnumerationCapError(
                        f"feasible-allocation enumeration exceeds the cap of {cap}"
                    )
                key = tuple(power)
                if key not in found:
                    found[key] = FeasibleAllocation(
                        power=tuple(power), rate=tuple(rate)
                    )
                return
            l = active[idx]
            for p, r in nonzero[l]:
                power[l] = p
                rate[l] = r
                assign(idx + 1)
            power[l] = 0.0
            rate[l] = 0.0

        assign(0)

    chosen: list[int] = []

    def independent_sets(l: int):
        if l == n:
            emit(chosen)
            return
        independent_sets(l + 1)  # l idle
        if not (net.conflict_sets[l] & set(chosen)):
            chosen.append(l)
            independent_sets(l + 1)  # l active
            chosen.pop()

    independent_sets(0)
    return tuple(found[k] for k in sorted(found))


def enumerate_feasible_allocations(
    net: ConflictNetwork, radios, cap: int = 1_000_000
) -> tuple[FeasibleAllocation, ...]:
    """Every (independent set, nonzero level assignment) pair, deduplicated.

    Includes the all-idle allocation.  Deterministically ordered by power
    vector.  Raises EnumerationCapError when the count would exceed `cap`.
    """
    radios = _check_radios(net, radios)
    return _allocations_cached(net, radios, int(cap))


def _region_lp(allocs, p_avg, rate_rows_rhs, extra_cols=0, extra_rate_coeff=None):
    """Shared LP skeleton over allocation weights.

    Variables: one weight per allocation, then `extra_cols` appended scalars.
    Rows: per-link rate floor, per-link power ceiling, total weight = 1.
    """
    k = len(allocs)
    n = len(p_avg)
    rows = []
    rels = []
    rhs = []
    for l in range(n):
        row = [alloc.rate[l] for alloc in allocs] + [0.0] * extra_cols
        if extra_rate_coeff is not None:
            row[k] = extra_rate_coeff[l]
        rows.append(row)
        rels.append(">=")
        rhs.append(rate_rows_rhs[l])
    for l in range(n):
        rows.append([alloc.power[l] for alloc in allocs] + [0.0] * extra_cols)
        rels.append("<=")
        rhs.append(p_avg[l])
    rows.append([1.0] * k + [0.0] * extra_cols)
    rels.append("=")
    rhs.append(1.0)
    return rows, rels, rhs


def membership(
    lam, net: ConflictNetwork, radios, margin: float = 0.0, cap: int = 1_000_000
) -> RegionResult:
    """Decide whether the arrival-rate vector lies in the admissible region.

    The region is closed; callers needing strict interiority pass a margin
    and the test runs against lam * (1 + margin).  When inside, the result
    carries convex weights over the returned allocations realizing the
    demanded rates within every power budget.
    """
    radios = _check_radios(net, radios)
    lam = [float(v) for v in lam]
    if len(lam) != net.num_links:
        raise ValueError(f"rate vector has length {len(lam)}, expected {net.num_links}")
    if any(v < 0 for v in lam):
        raise ValueError("arrival rates must be nonnegative")
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    allocs = enumerate_feasible_allocations(net, radios, cap)
    target = [v * (1.0 + margin) for v in lam]
    p_avg = [rd.p_avg for rd in radios]
    rows, rels, rhs = _region_lp(allocs, p_avg, target)
    # among certificates prefer the cheapest total average power
    cost = [sum(a.power) for a in allocs]
    out = solve_lp(LinearProgram(c=cost, a=rows, relations=rels, rhs=rhs))
    if out.status == INFEASIBLE:
        return RegionResult(verdict="outside")
    if out.status != OPTIMAL:
        raise AssertionError(f"membership LP ended {out.status}")
    return RegionResult(
        verdict="inside", weights=tuple(float(w) for w in out.x), allocations=allocs
    )


def max_admissible_rate(
    link: int, net: ConflictNetwork, radios, cap: int = 1_000_000
) -> float:
    """Largest r such that r on `link` alone (zeros elsewhere) is admissible."""
    radios = _check_radios(net, radios)
    if not 0 <= link < net.num_links:
        raise ValueError(f"link {link} out of range")
    allocs = enumerate_feasible_allocations(net, radios, cap)
    k = len(allocs)
    n = net.num_links
    coeff = [0.0] * n
    coeff[link] = -1.0
    floors = [0.0] * n
    p_avg = [rd.p_avg for rd in radios]
    rows, rels, rhs = _region_lp(
        allocs, p_avg, floors, extra_cols=1, extra_rate_coeff=coeff
    )
    cost = [0.0] * k + [-1.0]
    out = solve_lp(LinearProgram(c=cost, a=rows, relations=rels, rhs=rhs))
    if out.status != OPTIMAL:
        raise AssertionError(f"max-rate LP ended {out.status}")
    return float(out.x[k])


def boundary_scale(
    direction, net: ConflictNetwork, radios, cap: int = 1_000_000
) -> float:
    """Largest scale s with s * direction admissible (the boundary along it)."""
    radios = _check_radios(net, radios)
    d = [float(v) for v in direction]
    if len(d) != net.num_links:
        raise ValueError(f"direction has length {len(d)}, expected {net.num_links}")
    if any(v < 0 for v in d):
        raise ValueError("direction entries must be nonnegative")
    if not any(v > 0 for v in d):
        raise ValueError("direction must have a positive entry")
    allocs = enumerate_feasible_allocations(net, radios, cap)
    k = len(allocs)
    coeff = [-v for v in d]
    floors = [0.0] * net.num_links
    p_avg = [rd.p_avg for rd in radios]
    rows, rels, rhs = _region_lp(
        allocs, p_avg, floors, extra_cols=1, extra_rate_coeff=coeff
    )
    cost = [0.0] * k + [-1.0]
    out = solve_lp(LinearProgram(c=cost, a=rows, relations=rels, rhs=rhs))
    if out.status != OPTIMAL:
        raise AssertionError(f"boundary LP ended {out.status}")
    return float(out.x[k])
