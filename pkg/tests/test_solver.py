import itertools
import random

import numpy as np
import pytest
import scipy.optimize

from ecsched.solver import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    IterationLimitError,
    LinearProgram,
    LpOutcome,
    solve_lp,
)


from oracles import vertex_enumeration_solve


# ---------------------------------------------------------------- oracles


def scipy_solve(lp):
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row, rel, rhs in zip(lp.a, lp.relations, lp.rhs):
        if rel == "<=":
            a_ub.append(row)
            b_ub.append(rhs)
        elif rel == ">=":
            a_ub.append(-row)
            b_ub.append(-rhs)
        else:
            a_eq.append(row)
            b_eq.append(rhs)
    res = scipy.optimize.linprog(
        lp.c,
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(a_eq) if a_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=[(0, None)] * len(lp.c),
        method="highs",
    )
    if res.status == 0:
        return OPTIMAL, res.fun
    if res.status == 2:
        return INFEASIBLE, None
    if res.status == 3:
        return UNBOUNDED, None
    raise AssertionError(f"unexpected scipy status {res.status}")


def feasibility_gap(lp, x):
    gaps = [float(-min(x.min(), 0.0))]
    for row, rel, rhs in zip(lp.a, lp.relations, lp.rhs):
        v = float(row @ x)
        if rel == "<=":
            gaps.append(max(0.0, v - rhs))
        elif rel == ">=":
            gaps.append(max(0.0, rhs - v))
        else:
            gaps.append(abs(v - rhs))
    return max(gaps)


# ---------------------------------------------------------------- basics


def test_single_lower_bound():
    lp = LinearProgram(c=[1.0], a=[[1.0]], relations=[">="], rhs=[3.0])
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.value == pytest.approx(3.0, abs=1e-9)
    assert out.x[0] == pytest.approx(3.0, abs=1e-9)


def test_maximize_via_negated_cost():
    lp = LinearProgram(c=[-1.0], a=[[1.0]], relations=["<="], rhs=[4.0])
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.value == pytest.approx(-4.0, abs=1e-9)


def test_infeasible_sign_conflict():
    # x <= -1 clashes with x >= 0
    lp = LinearProgram(c=[1.0], a=[[1.0]], relations=["<="], rhs=[-1.0])
    assert solve_lp(lp).status == INFEASIBLE


def test_unbounded_without_constraints():
    lp = LinearProgram(c=[-1.0, 0.0], a=np.zeros((0, 2)), relations=[], rhs=[])
    assert solve_lp(lp).status == UNBOUNDED


def test_unbounded_with_lower_bound():
    lp = LinearProgram(c=[-1.0], a=[[1.0]], relations=[">="], rhs=[1.0])
    assert solve_lp(lp).status == UNBOUNDED


def test_trivial_optimum_at_origin():
    lp = LinearProgram(c=[2.0, 3.0], a=np.zeros((0, 2)), relations=[], rhs=[])
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.value == 0.0


def test_equality_constraint():
    lp = LinearProgram(
        c=[1.0, 1.0], a=[[1.0, 1.0]], relations=["="], rhs=[2.0]
    )
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.value == pytest.approx(2.0, abs=1e-9)
    assert feasibility_gap(lp, out.x) < 1e-9


def test_two_variable_blend():
    # classic diet-style blend with a known hand-solved optimum
    lp = LinearProgram(
        c=[2.0, 3.0],
        a=[[1.0, 2.0], [2.0, 1.0]],
        relations=[">=", ">="],
        rhs=[4.0, 4.0],
    )
    out = solve_lp(lp)
    # vertex (4/3, 4/3) gives 20/3; endpoints give 8 and 12
    assert out.value == pytest.approx(20.0 / 3.0, abs=1e-9)


def test_beale_degenerate_cycle_terminates():
    # the textbook cycling instance: Bland's rule must terminate on it
    lp = LinearProgram(
        c=[-0.75, 150.0, -0.02, 6.0],
        a=[
            [0.25, -60.0, -0.04, 9.0],
            [0.5, -90.0, -0.02, 3.0],
            [0.0, 0.0, 1.0, 0.0],
        ],
        relations=["<=", "<=", "<="],
        rhs=[0.0, 0.0, 1.0],
    )
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    ref_status, ref_value = vertex_enumeration_solve(lp)
    assert ref_status == OPTIMAL
    assert out.value == pytest.approx(ref_value, abs=1e-9)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        LinearProgram(c=[1.0, 2.0], a=[[1.0]], relations=["<="], rhs=[1.0])
    with pytest.raises(ValueError):
        LinearProgram(c=[1.0], a=[[1.0]], relations=["<=", ">="], rhs=[1.0])


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        LinearProgram(c=[np.nan], a=[[1.0]], relations=["<="], rhs=[1.0])


def test_iteration_limit_is_distinct_error():
    lp = LinearProgram(
        c=[1.0, 1.0],
        a=[[1.0, 2.0], [2.0, 1.0]],
        relations=[">=", ">="],
        rhs=[4.0, 4.0],
    )
    with pytest.raises(IterationLimitError):
        solve_lp(lp, max_iterations=1)


def test_deterministic_repeat():
    lp = LinearProgram(
        c=[1.0, -2.0, 0.5],
        a=[[1.0, 1.0, 1.0], [1.0, -1.0, 0.0]],
        relations=["<=", ">="],
        rhs=[5.0, -1.0],
    )
    first = solve_lp(lp)
    second = solve_lp(lp)
    assert first.status == second.status
    assert first.value == second.value
    assert np.array_equal(first.x, second.x)


# ---------------------------------------------------------------- randomized


def _random_bounded_lp(rng):
    n = rng.randint(2, 5)
    m = rng.randint(1, 4)
    rows = [[round(rng.uniform(-3, 3), 2) for _ in range(n)] for _ in range(m)]
    rels = [rng.choice(["<=", ">=", "="]) for _ in range(m)]
    rhs = [round(rng.uniform(-3, 5), 2) for _ in range(m)]
    # bound every variable so vertex enumeration is exact
    for i in range(n):
        row = [0.0] * n
        row[i] = 1.0
        rows.append(row)
        rels.append("<=")
        rhs.append(round(rng.uniform(0.5, 8), 2))
    c = [round(rng.uniform(-4, 4), 2) for _ in range(n)]
    return LinearProgram(c=c, a=rows, relations=rels, rhs=rhs)


def test_random_lps_match_vertex_enumeration_and_scipy():
    rng = random.Random(20240815)
    n_optimal = 0
    n_infeasible = 0
    for trial in range(250):
        lp = _random_bounded_lp(rng)
        out = solve_lp(lp)
        ref_status, ref_value = vertex_enumeration_solve(lp)
        sp_status, sp_value = scipy_solve(lp)
        assert out.status == ref_status, f"trial {trial}"
        assert out.status == sp_status, f"trial {trial}"
        if out.status == OPTIMAL:
            n_optimal += 1
            assert out.value == pytest.approx(ref_value, abs=1e-7), f"trial {trial}"
            assert out.value == pytest.approx(sp_value, abs=1e-7), f"trial {trial}"
            assert feasibility_gap(lp, out.x) < 1e-9, f"trial {trial}"
        else:
            n_infeasible += 1
    # the generator must exercise both outcomes to mean anything
    assert n_optimal > 50
    assert n_infeasible > 20
