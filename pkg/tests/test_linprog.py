"""Exact simplex: known optima, status detection, metamorphic properties."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from srkbounds.linprog import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    LpSolution,
    solve,
    solve_or_raise,
)


def test_known_maximum():
    lp = LinearProgram(
        objective=[1, 1],
        rows=[[1, 0], [0, 1]],
        relations=[LE, LE],
        rhs=[1, 2],
        maximize=True,
    )
    sol = solve(lp)
    assert sol.status == OPTIMAL
    assert sol.value == 3
    assert sol.x == [1, 2]
    assert sol.verify(lp)


def test_known_minimum_with_equalities():
    # min 2x + 3y s.t. x + y == 4, x - y <= 1
    lp = LinearProgram(
        objective=[2, 3],
        rows=[[1, 1], [1, -1]],
        relations=[EQ, LE],
        rhs=[4, 1],
        maximize=False,
    )
    sol = solve(lp)
    assert sol.status == OPTIMAL
    # cheapest splits weight onto x as much as the x - y <= 1 row allows
    assert sol.value == Fraction(2) * Fraction(5, 2) + Fraction(3) * Fraction(3, 2)
    assert sol.x == [Fraction(5, 2), Fraction(3, 2)]


def test_fractional_optimum():
    # max x + y s.t. 2x + y <= 2, x + 2y <= 2 -> vertex (2/3, 2/3)
    lp = LinearProgram(
        objective=[1, 1],
        rows=[[2, 1], [1, 2]],
        relations=[LE, LE],
        rhs=[2, 2],
        maximize=True,
    )
    sol = solve(lp)
    assert sol.value == Fraction(4, 3)
    assert sol.x == [Fraction(2, 3), Fraction(2, 3)]


def test_infeasible_detected():
    lp = LinearProgram(
        objective=[1],
        rows=[[1], [1]],
        relations=[LE, GE],
        rhs=[1, 2],
    )
    assert solve(lp).status == INFEASIBLE
    with pytest.raises(ValueError):
        solve_or_raise(lp)


def test_unbounded_detected():
    lp = LinearProgram(
        objective=[1, 0],
        rows=[[0, 1]],
        relations=[LE],
        rhs=[5],
        maximize=True,
    )
    assert solve(lp).status == UNBOUNDED
    with pytest.raises(ValueError):
        solve_or_raise(lp)


def test_free_variable():
    # min x with x free and x >= -7 is -7; without the free flag it is 0
    lp_free = LinearProgram(
        objective=[1], rows=[[1]], relations=[GE], rhs=[-7], free=[True]
    )
    assert solve(lp_free).value == -7
    lp_nonneg = LinearProgram(objective=[1], rows=[[1]], relations=[GE], rhs=[-7])
    assert solve(lp_nonneg).value == 0


def test_no_constraints():
    lp = LinearProgram(objective=[2, 1], rows=[], relations=[], rhs=[])
    sol = solve(lp)
    assert sol.status == OPTIMAL and sol.value == 0
    lp_max = LinearProgram(objective=[2, 1], rows=[], relations=[], rhs=[], maximize=True)
    assert solve(lp_max).status == UNBOUNDED


def test_rejects_floats():
    with pytest.raises(TypeError):
        LinearProgram(objective=[0.5], rows=[[1]], relations=[LE], rhs=[1])


def test_validation_errors():
    with pytest.raises(ValueError):
        LinearProgram(objective=[1], rows=[[1, 2]], relations=[LE], rhs=[1])
    with pytest.raises(ValueError):
        LinearProgram(objective=[1], rows=[[1]], relations=["<"], rhs=[1])
    with pytest.raises(ValueError):
        LinearProgram(objective=[1], rows=[[1]], relations=[LE], rhs=[1], free=[True, False])


def test_deterministic_pivoting():
    lp = LinearProgram(
        objective=[3, 1, 2],
        rows=[[1, 1, 3], [2, 2, 5], [4, 1, 2]],
        relations=[LE, LE, LE],
        rhs=[30, 24, 36],
        maximize=True,
    )
    a, b = solve(lp), solve(lp)
    assert a.value == b.value == 28
    assert a.x == b.x and a.y == b.y and a.pivots == b.pivots


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------

_coef = st.integers(-3, 3)


@st.composite
def _feasible_lp(draw):
    """An LP built around a known feasible point, so it is never infeasible."""
    nvars = draw(st.integers(1, 3))
    nrows = draw(st.integers(0, 4))
    x0 = [Fraction(draw(st.integers(0, 4)), draw(st.integers(1, 3))) for _ in range(nvars)]
    rows, rels, rhs = [], [], []
    for _ in range(nrows):
        row = [draw(_coef) for _ in range(nvars)]
        lhs = sum(c * x for c, x in zip(row, x0))
        rel = draw(st.sampled_from([LE, GE, EQ]))
        slack = Fraction(draw(st.integers(0, 3)))
        rows.append(row)
        rels.append(rel)
        rhs.append(lhs + slack if rel == LE else lhs - slack if rel == GE else lhs)
    lp = LinearProgram(
        objective=[draw(_coef) for _ in range(nvars)],
        rows=rows,
        relations=rels,
        rhs=rhs,
        maximize=draw(st.booleans()),
    )
    return lp, x0


@given(_feasible_lp())
def test_feasible_lp_never_infeasible(pair):
    lp, x0 = pair
    sol = solve(lp)
    assert sol.status in (OPTIMAL, UNBOUNDED)
    if sol.status == OPTIMAL:
        # verify() re-checks primal/dual feasibility and strong duality exactly
        assert sol.verify(lp)
        at_x0 = sum(c * x for c, x in zip(lp.objective, x0))
        if lp.maximize:
            assert sol.value >= at_x0
        else:
            assert sol.value <= at_x0


@given(_feasible_lp(), st.integers(1, 5))
def test_objective_scaling(pair, k):
    lp, _ = pair
    sol = solve(lp)
    scaled = LinearProgram(
        objective=[k * c for c in lp.objective],
        rows=lp.rows,
        relations=lp.relations,
        rhs=lp.rhs,
        maximize=lp.maximize,
        free=lp.free,
    )
    sol2 = solve(scaled)
    assert sol2.status == sol.status
    if sol.status == OPTIMAL:
        assert sol2.value == k * sol.value


@given(_feasible_lp(), st.randoms(use_true_random=False))
def test_row_permutation_invariance(pair, rng):
    lp, _ = pair
    order = list(range(lp.num_rows))
    rng.shuffle(order)
    permuted = LinearProgram(
        objective=lp.objective,
        rows=[lp.rows[i] for i in order],
        relations=[lp.relations[i] for i in order],
        rhs=[lp.rhs[i] for i in order],
        maximize=lp.maximize,
        free=lp.free,
    )
    a, b = solve(lp), solve(permuted)
    assert a.status == b.status
    if a.status == OPTIMAL:
        assert a.value == b.value
