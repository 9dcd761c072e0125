"""Independent reference implementations used only by the test suite.

Everything here deliberately avoids the library's own algorithms: direct
exhaustive scans and basic-solution enumeration, coded separately, so the
fast paths are checked against a second route.
"""

import itertools

import numpy as np

INFEASIBLE = "infeasible"
OPTIMAL = "optimal"


def brute_force_maximal_activations(net, subset):
    """All maximal feasible activation vectors by scanning 2^|subset| sets."""
    members = sorted(subset)
    inside = set(members)

    def feasible(active):
        return all(not (net.conflict_sets[l] & active) for l in active)

    results = []
    for bits in itertools.product([0, 1], repeat=len(members)):
        active = {l for l, b in zip(members, bits) if b}
        if not active or not feasible(active):
            continue
        grows = [l for l in inside - active if feasible(active | {l})]
        if not grows:
            vec = [0] * net.num_links
            for l in active:
                vec[l] = 1
            results.append(tuple(vec))
    return sorted(results)


def standard_form(lp):
    """Slack/surplus-augmented equality system A z = b, z >= 0."""
    m, n = lp.a.shape
    n_extra = sum(1 for r in lp.relations if r != "=")
    a = np.zeros((m, n + n_extra))
    a[:, :n] = lp.a
    j = n
    for i, rel in enumerate(lp.relations):
        if rel == "<=":
            a[i, j] = 1.0
            j += 1
        elif rel == ">=":
            a[i, j] = -1.0
            j += 1
    c = np.concatenate([lp.c, np.zeros(n_extra)])
    return a, np.array(lp.rhs, dtype=float), c


def vertex_enumeration_solve(lp):
    """Minimum over all basic feasible solutions.

    Exact whenever the LP has a finite optimum (always attained at a basic
    solution of the standard form); reports infeasible when no basis yields
    a feasible point.
    """
    a, b, c = standard_form(lp)
    m, total = a.shape
    best = None
    for basis in itertools.combinations(range(total), m):
        sub = a[:, basis]
        try:
            xb = np.linalg.solve(sub, b)
        except np.linalg.LinAlgError:
            continue
        if (xb < -1e-9).any():
            continue
        x = np.zeros(total)
        x[list(basis)] = xb
        if not np.allclose(a @ x, b, atol=1e-7):
            continue
        val = float(c @ x)
        if best is None or val < best:
            best = val
    if best is None:
        return INFEASIBLE, None
    return OPTIMAL, best


def sigma_vertex_search(net, links):
    """Subset pooling value by basic-solution search over dominance pairs.

    Builds the maximal-activation matrix with the brute-force enumerator
    above and searches every basis of the system
        M x - M b - s = 0,  sum(b) = 1,  x, b, s >= 0
    for the least total x weight.  Intended for |links| <= 4.
    """
    members = sorted(set(links))
    acts = brute_force_maximal_activations(net, members)
    cols = np.array(acts, dtype=float).T[members, :]
    n_rows, k = cols.shape
    m = n_rows + 1
    total = 2 * k + n_rows
    a = np.zeros((m, total))
    a[:n_rows, :k] = cols
    a[:n_rows, k : 2 * k] = -cols
    a[:n_rows, 2 * k :] = -np.eye(n_rows)
    a[n_rows, k : 2 * k] = 1.0
    b = np.zeros(m)
    b[n_rows] = 1.0
    c = np.zeros(total)
    c[:k] = 1.0

    best = None
    for basis in itertools.combinations(range(total), m):
        sub = a[:, basis]
        try:
            xb = np.linalg.solve(sub, b)
        except np.linalg.LinAlgError:
            continue
        if (xb < -1e-9).any():
            continue
        z = np.zeros(total)
        z[list(basis)] = xb
        if not np.allclose(a @ z, b, atol=1e-7):
            continue
        val = float(c @ z)
        if best is None or val < best:
            best = val
    return best


def exhaustive_best_allocation(net, radios, q, u):
    """Globally optimal slot decision by scanning every level combination.

    Returns (value, power, rate) where ties prefer the lexicographically
    smallest power vector.
    """
    per_link = [list(zip(rd.levels, rd.rates)) for rd in radios]
    best = None
    for combo in itertools.product(*per_link):
        power = tuple(p for p, _ in combo)
        active = [l for l, p in enumerate(power) if p > 0]
        ok = True
        for l in active:
            if net.conflict_sets[l] & set(active):
                ok = False
                break
        if not ok:
            continue
        rate = tuple(r for _, r in combo)
        value = sum(q[l] * rate[l] - u[l] * power[l] for l in range(len(power)))
        if best is None or value > best[0] + 1e-12 or (
            abs(value - best[0]) <= 1e-12 and power < best[1]
        ):
            best = (value, power, rate)
    return best
