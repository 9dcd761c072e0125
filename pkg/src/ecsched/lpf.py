"""Local-pooling analysis of a conflict network.

For a subset L of links, collect the maximal activation vectors of L into
the columns of a 0/1 matrix.  The subset's pooling value is the smallest
total weight of a nonnegative column combination that dominates some convex
column combination; the network's factor is the minimum over all nonempty
subsets.  A factor of 1 certifies that greedy maximal scheduling attains
the full region; smaller values scale the guaranteed region down.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .netmodel import ConflictNetwork, enumerate_maximal_activations
from .solver import LinearProgram, OPTIMAL, solve_lp

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PoolingWitness:
    """A dominance pair achieving a subset's pooling value.

    activations holds the maximal activation vectors of `links` (full-length
    tuples).  dominating/dominated are convex weights over those columns;
    scaling the dominating mix by sigma weakly dominates the dominated mix
    componentwise on `links`.
    """

    links: tuple[int, ...]
    activations: tuple[tuple[int, ...], ...]
    dominating_weights: tuple[float, ...]
    dominated_weights: tuple[float, ...]

    def mixes(self) -> tuple[np.ndarray, np.ndarray]:
        cols = np.array(self.activations, dtype=float).T  # links x columns
        sub = cols[list(self.links), :]
        return sub @ np.array(self.dominating_weights), sub @ np.array(
            self.dominated_weights
        )


@dataclass(frozen=True)
class LpfResult:
    sigma_star: float
    argmin_links: tuple[int, ...]
    witness: PoolingWitness
    per_subset: dict[tuple[int, ...], float]


def sigma_for_subgraph(
    net: ConflictNetwork, links, cap: int = 20
) -> tuple[float, PoolingWitness]:
    """Pooling value of one link subset, with a witness pair.

    LP over x, b >= 0 (one weight per maximal activation column M_j):
    minimize sum(x) subject to M x >= M b rowwise and sum(b) = 1.
    The optimum never exceeds 1 (x = b is feasible) and is positive.
    """
    members = tuple(sorted(set(int(l) for l in links)))
    activations = enumerate_maximal_activations(net, members, cap=cap)
    cols = np.array(activations, dtype=float).T[list(members), :]  # |L| x k
    n_rows, k = cols.shape

    # variables: x_1..x_k, b_1..b_k
    rows = []
    rels = []
    rhs = []
    for i in range(n_rows):
        rows.append(list(cols[i]) + list(-cols[i]))
        rels.append(">=")
        rhs.append(0.0)
    rows.append([0.0] * k + [1.0] * k)
    rels.append("=")
    rhs.append(1.0)
    cost = [1.0] * k + [0.0] * k

    out = solve_lp(LinearProgram(c=cost, a=rows, relations=rels, rhs=rhs))
    if out.status != OPTIMAL:
        raise AssertionError(f"pooling LP ended {out.status}")
    sigma = float(out.value)
    x = out.x[:k]
    b = out.x[k:]
    total = float(x.sum())
    if total <= 0:
        raise AssertionError("pooling LP returned a zero dominating mix")
    witness = PoolingWitness(
        links=members,
        activations=activations,
        dominating_weights=tuple(float(v) for v in x / total),
        dominated_weights=tuple(float(v) for v in b),
    )
    return sigma, witness


def lpf(net: ConflictNetwork, max_links: int = 14, cap: int = 20) -> LpfResult:
    """Network pooling factor: minimize the subset value over all subsets.

    Exhaustive over the 2^L - 1 nonempty subsets, so networks above
    `max_links` links are rejected.  Ties resolve to the lexicographically
    smallest subset.
    """
    n = net.num_links
    if n > max_links:
        raise ValueError(
            f"{n} links would need {2**n - 1} subset evaluations; cap is {max_links}"
        )
    best_sigma = None
    best_links = None
    best_witness = None
    per_subset: dict[tuple[int, ...], float] = {}
    for size in range(1, n + 1):
        for members in combinations(range(n), size):
            sigma, witness = sigma_for_subgraph(net, members, cap=cap)
            per_subset[members] = sigma
            if best_sigma is None or sigma < best_sigma - 1e-12:
                best_sigma = sigma
                best_links = members
                best_witness = witness
    return LpfResult(
        sigma_star=best_sigma,
        argmin_links=best_links,
        witness=best_witness,
        per_subset=per_subset,
    )


def check_sigma_pair(
    net: ConflictNetwork,
    links,
    dominating_weights,
    dominated_weights,
    sigma: float,
    cap: int = 20,
) -> bool:
    """Does the pair satisfy the pooling inequality at this sigma?

    Returns False exactly when sigma times the dominating mix is strictly
    below the dominated mix in every component, i.e. when the pair refutes
    sigma.  Both weight vectors must be convex (sum 1 within 1e-9).
    """
    members = tuple(sorted(set(int(l) for l in links)))
    activations = enumerate_maximal_activations(net, members, cap=cap)
    wd = np.asarray(dominating_weights, dtype=float)
    wb = np.asarray(dominated_weights, dtype=float)
    if wd.shape != (len(activations),) or wb.shape != (len(activations),):
        raise ValueError(
            f"weight vectors must have one entry per activation ({len(activations)})"
        )
    if (wd < 0).any() or (wb < 0).any():
        raise ValueError("weights must be nonnegative")
    for name, w in (("dominating", wd), ("dominated", wb)):
        if abs(float(w.sum()) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"{name} weights sum to {w.sum()}, not 1")
    cols = np.array(activations, dtype=float).T[list(members), :]
    mix_hi = cols @ wd
    mix_lo = cols @ wb
    strictly_refuted = bool((sigma * mix_hi < mix_lo).all())
    return not strictly_refuted
