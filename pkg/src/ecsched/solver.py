"""Small dense linear-program solver.

Two-phase tableau simplex with Bland's anti-cycling rule, meant for LPs of
at most a few hundred variables and constraints.  Deterministic: identical
input produces the identical pivot sequence and output.  All variables are
nonnegative; the objective is minimized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = ("<=", "=", ">=")


class IterationLimitError(RuntimeError):
    """Pivot budget exhausted before the LP was resolved."""


@dataclass
class LinearProgram:
    """minimize c @ x  subject to  a[i] @ x (rel[i]) rhs[i],  x >= 0."""

    c: np.ndarray
    a: np.ndarray
    relations: tuple[str, ...]
    rhs: np.ndarray

    def __init__(self, c, a, relations, rhs):
        self.c = np.asarray(c, dtype=float)
        self.a = np.asarray(a, dtype=float)
        if self.a.size == 0:
            self.a = self.a.reshape(0, self.c.shape[0])
        self.relations = tuple(relations)
        self.rhs = np.asarray(rhs, dtype=float)
        if self.c.ndim != 1:
            raise ValueError("objective must be a vector")
        if self.a.ndim != 2 or self.a.shape[1] != self.c.shape[0]:
            raise ValueError(
                f"constraint matrix shape {self.a.shape} does not match {self.c.shape[0]} variables"
            )
        m = self.a.shape[0]
        if len(self.relations) != m or self.rhs.shape[0] != m:
            raise ValueError("relations and rhs must match the number of constraint rows")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        if not (np.isfinite(self.c).all() and np.isfinite(self.a).all() and np.isfinite(self.rhs).all()):
            raise ValueError("linear program contains non-finite entries")


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: float | None
    x: np.ndarray | None


def _pivot(tableau: np.ndarray, row: int, col: int, basis: np.ndarray):
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    basis[row] = col


def _bland_enter(obj_row: np.ndarray, allowed: int, tol: float) -> int | None:
    # smallest-index column with a negative reduced cost
    for j in range(allowed):
        if obj_row[j] < -tol:
            return j
    return None


def _bland_leave(tableau: np.ndarray, col: int, basis: np.ndarray, tol: float) -> int | None:
    best_row = None
    best_ratio = None
    for i in range(tableau.shape[0]):
        coef = tableau[i, col]
        if coef > tol:
            ratio = tableau[i, -1] / coef
            if (
                best_ratio is None
                or ratio < best_ratio - tol
                or (abs(ratio - best_ratio) <= tol and basis[i] < basis[best_row])
            ):
                best_ratio = ratio
                best_row = i
    return best_row


def _run_simplex(tableau, obj_row, basis, allowed, tol, budget) -> str:
    """Iterate pivots until optimal or unbounded; returns the status."""
    for _ in range(budget):
        col = _bland_enter(obj_row, allowed, tol)
        if col is None:
            return OPTIMAL
        row = _bland_leave(tableau, col, basis, tol)
        if row is None:
            return UNBOUNDED
        _pivot(tableau, row, col, basis)
        # keep the objective row in sync with the pivot
        obj_row -= obj_row[col] * tableau[row]
    raise IterationLimitError(f"no resolution within {budget} pivots")


def solve_lp(lp: LinearProgram, max_iterations: int = 50_000, tol: float = 1e-9) -> LpOutcome:
    """Solve the LP; status is one of optimal / infeasible / unbounded.

    Exceeding max_iterations raises IterationLimitError, which is a solver
    failure distinct from an infeasible model.
    """
    n = lp.c.shape[0]
    m = lp.a.shape[0]
    if m == 0:
        # only the x >= 0 bounds: minimum is 0 at the origin unless some
        # cost coefficient is negative
        if (lp.c < -tol).any():
            return LpOutcome(status=UNBOUNDED, value=None, x=None)
        return LpOutcome(status=OPTIMAL, value=0.0, x=np.zeros(n))

    a = lp.a.copy()
    b = lp.rhs.copy()
    rels = list(lp.relations)
    for i in range(m):
        if b[i] < 0:
            a[i] = -a[i]
            b[i] = -b[i]
            rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[rels[i]]

    n_slack = sum(1 for r in rels if r != "=")
    slack_of: dict[int, int] = {}
    col = n
    for i, r in enumerate(rels):
        if r != "=":
            slack_of[i] = col
            col += 1
    art_rows = [i for i, r in enumerate(rels) if r != "<="]
    art_of = {}
    for i in art_rows:
        art_of[i] = col
        col += 1
    total = col

    tableau = np.zeros((m, total + 1))
    tableau[:, :n] = a
    tableau[:, -1] = b
    basis = np.empty(m, dtype=int)
    for i, r in enumerate(rels):
        if r == "<=":
            tableau[i, slack_of[i]] = 1.0
            basis[i] = slack_of[i]
        elif r == ">=":
            tableau[i, slack_of[i]] = -1.0
            tableau[i, art_of[i]] = 1.0
            basis[i] = art_of[i]
        else:
            tableau[i, art_of[i]] = 1.0
            basis[i] = art_of[i]

    budget = max_iterations

    # phase 1: drive the artificial variables to zero
    if art_rows:
        obj = np.zeros(total + 1)
        for i in art_rows:
            obj -= tableau[i]
        # artificial columns carry cost 1; after the row subtractions their
        # reduced costs are 0, original columns carry the negated row sums
        for i in art_rows:
            obj[art_of[i]] = 0.0
        status = _run_simplex(tableau, obj, basis, n + n_slack, tol, budget)
        if status != OPTIMAL:
            # phase 1 is bounded below by zero; anything else is a logic error
            raise AssertionError("phase 1 cannot be unbounded")
        if -obj[-1] > 1e-7:
            return LpOutcome(status=INFEASIBLE, value=None, x=None)
        # pivot any artificial still in the basis out, or drop its row
        art_cols = set(art_of.values())
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] in art_cols:
                pivot_col = None
                for j in range(n + n_slack):
                    if abs(tableau[i, j]) > tol:
                        pivot_col = j
                        break
                if pivot_col is None:
                    keep[i] = False
                else:
                    _pivot(tableau, i, pivot_col, basis)
        if not keep.all():
            tableau = tableau[keep]
            basis = basis[keep]
            m = tableau.shape[0]
        tableau = tableau[:, list(range(n + n_slack)) + [total]]

    # phase 2: original objective over the current feasible basis
    c_ext = np.zeros(n + n_slack + 1)
    c_ext[:n] = lp.c
    obj = c_ext.copy()
    for i in range(m):
        if abs(c_ext[basis[i]]) > 0:
            obj -= c_ext[basis[i]] * tableau[i]
    status = _run_simplex(tableau, obj, basis, n + n_slack, tol, budget)
    if status == UNBOUNDED:
        return LpOutcome(status=UNBOUNDED, value=None, x=None)

    x = np.zeros(n + n_slack)
    for i in range(m):
        x[basis[i]] = tableau[i, -1]
    primal = x[:n]
    # tiny negatives are pivot noise
    primal = np.where(np.abs(primal) < 1e-12, 0.0, primal)
    return LpOutcome(status=OPTIMAL, value=float(lp.c @ primal), x=primal)
