"""Exact linear programming over the rationals.

A small dense two-phase simplex implementation on

    optimize  c.x
    s.t.      A_i . x  (<= / >= / ==)  b_i      for each row i
              x_j >= 0  (default)  or  x_j free

with every entry a ``fractions.Fraction``.  The solver returns exact optima
together with an exact dual vector, so callers can certify bounds without any
floating-point tolerance.  Bland's smallest-index rule makes the pivot
sequence deterministic and cycle-free.

Sizes here are desk-scale (at most a few hundred variables after the callers'
symmetry reductions), so no sparse machinery is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

LE, GE, EQ = "<=", ">=", "=="
_RELATIONS = (LE, GE, EQ)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass int/Fraction for exactness")
    return Fraction(x)


@dataclass
class LinearProgram:
    """Exact LP data.  ``free[j]`` marks variable j as unrestricted in sign."""

    objective: Sequence
    rows: Sequence[Sequence]
    relations: Sequence[str]
    rhs: Sequence
    maximize: bool = False
    free: Optional[Sequence[bool]] = None

    def __post_init__(self):
        self.objective = [_frac(v) for v in self.objective]
        self.rows = [[_frac(v) for v in row] for row in self.rows]
        self.rhs = [_frac(v) for v in self.rhs]
        self.relations = list(self.relations)
        n = len(self.objective)
        if self.free is None:
            self.free = [False] * n
        else:
            self.free = list(self.free)
        if len(self.free) != n:
            raise ValueError("free-flag length != number of variables")
        if not (len(self.rows) == len(self.relations) == len(self.rhs)):
            raise ValueError("inconsistent row/relation/rhs counts")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        for row in self.rows:
            if len(row) != n:
                raise ValueError("row length != number of variables")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)


@dataclass
class LpSolution:
    status: str
    value: Optional[Fraction] = None
    x: Optional[list] = None
    y: Optional[list] = None
    pivots: int = 0
    certificate: dict = field(default_factory=dict)

    def verify(self, lp: LinearProgram) -> bool:
        """Exact optimality check: primal + dual feasibility + equal objectives.

        Raises ValueError on any violated condition; returns True otherwise.
        Infeasible/unbounded statuses verify vacuously (their certificates are
        checked at construction time inside solve()).
        """
        if self.status != OPTIMAL:
            return True
        x, y = self.x, self.y
        if x is None or y is None:
            raise ValueError("optimal solution missing primal or dual vector")
        # primal feasibility
        for j, (xj, is_free) in enumerate(zip(x, lp.free)):
            if not is_free and xj < 0:
                raise ValueError(f"x[{j}] = {xj} < 0")
        for i, (row, rel, b) in enumerate(zip(lp.rows, lp.relations, lp.rhs)):
            lhs = sum(a * xj for a, xj in zip(row, x))
            if rel == LE and lhs > b:
                raise ValueError(f"row {i}: {lhs} > {b}")
            if rel == GE and lhs < b:
                raise ValueError(f"row {i}: {lhs} < {b}")
            if rel == EQ and lhs != b:
                raise ValueError(f"row {i}: {lhs} != {b}")
        # dual sign conditions (for the minimization reading of the LP)
        sense = -1 if lp.maximize else 1
        for i, rel in enumerate(lp.relations):
            yi = sense * y[i]
            if rel == GE and yi < 0:
                raise ValueError(f"y[{i}] = {y[i]} has wrong sign for >= row")
            if rel == LE and yi > 0:
                raise ValueError(f"y[{i}] = {y[i]} has wrong sign for <= row")
        # dual feasibility: A^T y vs c componentwise
        for j in range(lp.num_vars):
            aty = sum(lp.rows[i][j] * y[i] for i in range(lp.num_rows))
            cj = lp.objective[j]
            slack = sense * (cj - aty)
            if lp.free[j]:
                if slack != 0:
                    raise ValueError(f"dual equality broken on free var {j}: {aty} != {cj}")
            elif slack < 0:
                raise ValueError(f"dual infeasible at var {j}: reduced cost {slack}")
        # strong duality
        primal = sum(c * xj for c, xj in zip(lp.objective, x))
        dual = sum(b * yi for b, yi in zip(lp.rhs, y))
        if primal != dual:
            raise ValueError(f"duality gap: primal {primal} != dual {dual}")
        if primal != self.value:
            raise ValueError(f"stored value {self.value} != recomputed {primal}")
        return True


def solve(lp: LinearProgram) -> LpSolution:
    """Two-phase exact simplex with Bland's rule; duals read off the tableau."""
    n = lp.num_vars
    m = lp.num_rows

    # Minimization copy with free variables split as x = u - v.
    sense = -1 if lp.maximize else 1
    split = [j for j in range(n) if lp.free[j]]
    neg_col = {j: n + k for k, j in enumerate(split)}
    ncols = n + len(split)

    cost = [sense * c for c in lp.objective] + [
        -sense * lp.objective[j] for j in split
    ]
    rows = []
    rels = []
    rhs = []
    row_sign = []  # +1 if kept, -1 if the row was negated to make b >= 0
    for i in range(m):
        row = list(lp.rows[i]) + [-lp.rows[i][j] for j in split]
        rel, b = lp.relations[i], lp.rhs[i]
        if b < 0:
            row = [-a for a in row]
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
            row_sign.append(-1)
        else:
            row_sign.append(1)
        rows.append(row)
        rels.append(rel)
        rhs.append(b)

    # Column layout: structurals | slacks/surplus | artificials (one per row).
    # Every row gets exactly one of {slack, artificial-with-optional-surplus}
    # providing the initial identity basis, and the per-row "dual column"
    # (slack or artificial, coefficient +1) we later read y from.
    slack_of = {}
    surplus_of = {}
    art_of = {}
    col = ncols
    for i, rel in enumerate(rels):
        if rel == LE:
            slack_of[i] = col
            col += 1
        elif rel == GE:
            surplus_of[i] = col
            col += 1
    for i, rel in enumerate(rels):
        if rel in (GE, EQ):
            art_of[i] = col
            col += 1
    total = col
    artificial_cols = set(art_of.values())

    zero = Fraction(0)
    one = Fraction(1)
    T = [[zero] * (total + 1) for _ in range(m)]
    for i in range(m):
        for j, a in enumerate(rows[i]):
            T[i][j] = a
        if i in slack_of:
            T[i][slack_of[i]] = one
        if i in surplus_of:
            T[i][surplus_of[i]] = -one
        if i in art_of:
            T[i][art_of[i]] = one
        T[i][total] = rhs[i]

    basis = [slack_of.get(i, art_of.get(i)) for i in range(m)]

    def reduced_costs(c_full):
        cb = [c_full[basis[i]] for i in range(m)]
        red = list(c_full)
        obj = zero
        for i in range(m):
            if cb[i] == 0:
                continue
            ti = T[i]
            w = cb[i]
            for j in range(total):
                red[j] -= w * ti[j]
            obj += w * ti[total]
        return red, obj

    pivots = 0

    def run_phase(c_full, banned) -> Optional[str]:
        nonlocal pivots
        red, _ = reduced_costs(c_full)
        while True:
            enter = -1
            for j in range(total):
                if red[j] < 0 and j not in banned:
                    enter = j
                    break
            if enter < 0:
                return None
            leave = -1
            best = None
            for i in range(m):
                if T[i][enter] > 0:
                    ratio = T[i][total] / T[i][enter]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return UNBOUNDED
            piv = T[leave][enter]
            T[leave] = [v / piv for v in T[leave]]
            for i in range(m):
                if i != leave and T[i][enter] != 0:
                    f = T[i][enter]
                    T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
            basis[leave] = enter
            pivots += 1
            # update reduced costs incrementally via one elimination pass
            if red[enter] != 0:
                f = red[enter]
                red_row = T[leave]
                for j in range(total):
                    red[j] -= f * red_row[j]

    # ---- phase 1 ----
    if artificial_cols:
        c1 = [zero] * total
        for j in artificial_cols:
            c1[j] = one
        status = run_phase(c1, banned=frozenset())
        if status == UNBOUNDED:  # cannot happen: phase-1 objective >= 0
            raise RuntimeError("phase-1 unbounded; tableau corrupted")
        art_val = sum(
            T[i][total] for i in range(m) if basis[i] in artificial_cols
        )
        if art_val != 0:
            # Farkas-style certificate: the phase-1 duals prove infeasibility.
            return LpSolution(status=INFEASIBLE, pivots=pivots,
                              certificate={"phase1_objective": art_val})
        # pivot remaining (degenerate) artificials out where possible
        for i in range(m):
            if basis[i] in artificial_cols:
                enter = next(
                    (j for j in range(total)
                     if j not in artificial_cols and T[i][j] != 0),
                    None,
                )
                if enter is not None:
                    piv = T[i][enter]
                    T[i] = [v / piv for v in T[i]]
                    for k in range(m):
                        if k != i and T[k][enter] != 0:
                            f = T[k][enter]
                            T[k] = [a - f * b for a, b in zip(T[k], T[i])]
                    basis[i] = enter
                    pivots += 1
                # else: the row is all-zero across real columns -> redundant
                # constraint; the artificial stays basic at value 0.

    # ---- phase 2 ----
    c2 = [zero] * total
    for j in range(ncols):
        c2[j] = cost[j]
    status = run_phase(c2, banned=artificial_cols)
    if status == UNBOUNDED:
        return LpSolution(status=UNBOUNDED, pivots=pivots)

    red2, _ = reduced_costs(c2)
    xfull = [zero] * total
    for i in range(m):
        xfull[basis[i]] = T[i][total]
    x = [xfull[j] for j in range(n)]
    for j in split:
        x[j] -= xfull[neg_col[j]]

    # duals of the minimization copy: read from the per-row +1 column
    y_min = []
    for i in range(m):
        if i in slack_of:
            y_min.append(-red2[slack_of[i]])
        else:
            y_min.append(-red2[art_of[i]])
    # map back through row negation and the original optimization sense
    y = [row_sign[i] * sense * y_min[i] for i in range(m)]

    value = sum(c * xj for c, xj in zip(lp.objective, x))
    sol = LpSolution(status=OPTIMAL, value=value, x=x, y=y, pivots=pivots)
    sol.verify(lp)
    return sol


def solve_or_raise(lp: LinearProgram) -> LpSolution:
    sol = solve(lp)
    if sol.status != OPTIMAL:
        raise ValueError(f"LP not solvable to optimality: {sol.status}")
    return sol
