"""Delsarte-style linear programs over the sum-rank association scheme.

The scheme on F_q^{n x m} (one block) is the bilinear-forms scheme; its
(n+1) x (n+1) eigenmatrix is produced by a three-term recurrence.  A product
space is handled via the Kronecker product of the per-block eigenmatrices;
rows and columns are indexed by rank tuples u = (u_1, ..., u_t), 0 <= u_i <=
n_i, in lexicographic order with u_1 most significant.

Two LPs are assembled on top of this:

* ``delsarte_lp`` -- the classical inner-distribution LP bounding codes of
  minimum sum-rank distance d;
* ``theta_lp`` -- the same LP with the entrywise nonnegativity of the
  distribution dropped, which for these vertex-transitive graphs equals the
  Lovasz theta number of the distance-(<= k) graph.

Both are solved exactly (fractions end to end) after compressing variables
and constraints by the permutation symmetry among identical blocks, so
Hamming-like spaces with many equal blocks stay small.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .linprog import EQ, GE, LinearProgram, LpSolution, solve_or_raise
from .space import SpaceParams, gaussian_binomial, rank_count
from .spectrum import bilinear_forms_spectrum


# ---------------------------------------------------------------------------
# eigenmatrix of one bilinear-forms block
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def block_eigenmatrix(q: int, n: int, m: int) -> Tuple[Tuple[int, ...], ...]:
    """Eigenmatrix of the rank-metric scheme on F_q^{n x m}.

    Entry [u][v] is the v-th orthogonality polynomial evaluated at the u-th
    adjacency eigenvalue; row 0 lists the relation valencies.  All entries
    are integers; a non-integer value signals a broken recurrence and raises.
    """
    if not (1 <= n <= m):
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    spec = bilinear_forms_spectrum(q, n, m)
    thetas = [Fraction(t) for t in spec.eigenvalues]
    if len(thetas) != n + 1:
        raise RuntimeError("spectrum size mismatch")

    def b(v: int) -> Fraction:
        return Fraction(q ** (2 * v) * (q ** (m - v) - 1) * (q ** (n - v) - 1), q - 1)

    def c(v: int) -> Fraction:
        return Fraction(q ** (v - 1) * (q ** v - 1), q - 1)

    def a(v: int) -> Fraction:
        return b(0) - b(v) - c(v)

    rows: List[Tuple[int, ...]] = []
    for u in range(n + 1):
        th = thetas[u]
        vals = [Fraction(1), th]
        for v in range(2, n + 1):
            nxt = ((th - a(v - 1)) * vals[v - 1] - b(v - 2) * vals[v - 2]) / c(v)
            vals.append(nxt)
        row = []
        for v, x in enumerate(vals[: n + 1]):
            if x.denominator != 1:
                raise ArithmeticError(
                    f"non-integer eigenmatrix entry at ({u},{v}) for q={q},n={n},m={m}: {x}"
                )
            row.append(int(x))
        rows.append(tuple(row))

    # row 0 must list the valencies of the rank relations
    for v in range(n + 1):
        expected = rank_count(n, m, v, q)
        if rows[0][v] != expected:
            raise ArithmeticError(
                f"valency check failed at v={v}: {rows[0][v]} != {expected}"
            )
    return tuple(rows)


def scheme_eigenmatrix(sp: SpaceParams) -> List[List[int]]:
    """Kronecker product of the per-block eigenmatrices, tuple-lex order."""
    mats = [block_eigenmatrix(sp.q, n_i, m_i) for n_i, m_i in zip(sp.n, sp.m)]
    out: List[List[int]] = [[1]]
    for mat in mats:
        nxt = []
        for row in out:
            for brow in mat:
                nxt.append([x * y for x in row for y in brow])
        out = nxt
    return out


def index_tuples(sp: SpaceParams) -> Iterator[Tuple[int, ...]]:
    """All rank tuples in lexicographic order (first coordinate dominant)."""
    return itertools.product(*(range(n_i + 1) for n_i in sp.n))


# ---------------------------------------------------------------------------
# symmetry compression over identical blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _BlockClass:
    n: int
    m: int
    count: int


def _block_classes(sp: SpaceParams) -> List[_BlockClass]:
    classes: List[_BlockClass] = []
    for (n_i, m_i), grp in itertools.groupby(zip(sp.n, sp.m)):
        classes.append(_BlockClass(n_i, m_i, sum(1 for _ in grp)))
    return classes


def _orbit_reps(classes: Sequence[_BlockClass]) -> List[Tuple[Tuple[int, ...], ...]]:
    """Orbit representatives: per class a non-increasing tuple of indices."""
    per_class = []
    for cl in classes:
        reps = [
            tuple(sorted(c, reverse=True))
            for c in itertools.combinations_with_replacement(range(cl.n + 1), cl.count)
        ]
        per_class.append(sorted(set(reps), reverse=True))
    return [tuple(combo) for combo in itertools.product(*per_class)]


def _orbit_size(rep: Tuple[Tuple[int, ...], ...]) -> int:
    size = 1
    for part in rep:
        k = len(part)
        denom = 1
        for _, grp in itertools.groupby(part):
            denom *= math.factorial(sum(1 for _ in grp))
        size *= math.factorial(k) // denom
    return size


def _flatten(rep: Tuple[Tuple[int, ...], ...]) -> Tuple[int, ...]:
    return tuple(x for part in rep for x in part)


def _orbit_weight(rep: Tuple[Tuple[int, ...], ...]) -> int:
    return sum(_flatten(rep))


def _class_pair_sum(mat, js: Tuple[int, ...], vs: Tuple[int, ...]) -> int:
    """Sum over distinct assignments of the multiset ``js`` to the positions
    carrying column indices ``vs`` of the product of eigenmatrix entries."""

    def rec(pos: int, remaining: Tuple[int, ...], memo) -> int:
        if pos == len(vs):
            return 1
        key = (pos, remaining)
        if key in memo:
            return memo[key]
        total = 0
        seen = set()
        for idx, a in enumerate(remaining):
            if a in seen:
                continue
            seen.add(a)
            rest = remaining[:idx] + remaining[idx + 1 :]
            total += mat[a][vs[pos]] * rec(pos + 1, rest, memo)
        memo[key] = total
        return total

    return rec(0, tuple(sorted(js)), {})


def _pair_coefficient(
    classes: Sequence[_BlockClass],
    mats,
    var_rep: Tuple[Tuple[int, ...], ...],
    con_rep: Tuple[Tuple[int, ...], ...],
) -> Fraction:
    """Coefficient of the orbit variable in the constraint row: the symmetric
    average (1/|orbit|) * sum_{j in orbit} prod_i Q_i[j_i][v_i]."""
    total = 1
    for cl_idx in range(len(classes)):
        total *= _class_pair_sum(mats[cl_idx], var_rep[cl_idx], con_rep[cl_idx])
    return Fraction(total, _orbit_size(var_rep))


# ---------------------------------------------------------------------------
# LP assembly
# ---------------------------------------------------------------------------

@dataclass
class SchemeLpResult:
    """Exact optimum of a scheme LP plus its certificate ingredients."""

    value: Fraction
    distribution: Dict[Tuple[int, ...], Fraction]  # orbit rep -> total orbit mass
    orbit_sizes: Dict[Tuple[int, ...], int]
    dual: Dict[Tuple[int, ...], Fraction]  # constraint orbit rep -> multiplier
    lp: LinearProgram
    solution: LpSolution

    @property
    def floor(self) -> int:
        return self.value.numerator // self.value.denominator

    def as_certificate(self) -> dict:
        def enc(fr: Fraction) -> str:
            return f"{fr.numerator}/{fr.denominator}"

        return {
            "value": enc(self.value),
            "distribution": {
                ",".join(map(str, k)): enc(v) for k, v in self.distribution.items()
            },
            "orbit_sizes": {
                ",".join(map(str, k)): v for k, v in self.orbit_sizes.items()
            },
            "dual": {",".join(map(str, k)): enc(v) for k, v in self.dual.items()},
        }


def _scheme_lp(sp: SpaceParams, d: int, nonneg: bool) -> SchemeLpResult:
    if not (1 <= d <= sp.N + 1):
        raise ValueError(f"need 1 <= d <= N={sp.N}, got d={d}")
    classes = _block_classes(sp)
    mats = [block_eigenmatrix(sp.q, cl.n, cl.m) for cl in classes]
    reps = _orbit_reps(classes)
    zero = tuple((0,) * cl.count for cl in classes)

    active = [r for r in reps if _orbit_weight(r) >= d]
    con_reps = reps  # one inequality per dual orbit

    nvars = len(active)
    rows, rels, rhs = [], [], []
    for w in con_reps:
        coeffs = [_pair_coefficient(classes, mats, o, w) for o in active]
        const = _pair_coefficient(classes, mats, zero, w)  # orbit {0}, size 1
        rows.append(coeffs)
        rels.append(GE)
        rhs.append(-const)
    lp = LinearProgram(
        objective=[Fraction(1)] * nvars,
        rows=rows,
        relations=rels,
        rhs=rhs,
        maximize=True,
        free=[not nonneg] * nvars,
    )
    sol = solve_or_raise(lp)
    value = Fraction(1) + sol.value

    distribution = {_flatten(zero): Fraction(1)}
    sizes = {_flatten(zero): 1}
    for rep, xv in zip(active, sol.x):
        distribution[_flatten(rep)] = xv
        sizes[_flatten(rep)] = _orbit_size(rep)
    dual = {_flatten(w): yv for w, yv in zip(con_reps, sol.y)}
    return SchemeLpResult(
        value=value,
        distribution=distribution,
        orbit_sizes=sizes,
        dual=dual,
        lp=lp,
        solution=sol,
    )


def delsarte_lp(sp: SpaceParams, d: int) -> SchemeLpResult:
    """Exact optimum of the inner-distribution LP for min distance d.

    maximize sum(a) with a_0 = 1, a >= 0, a vanishing on weights 1..d-1 and
    all eigenmatrix contractions nonnegative.  The value upper-bounds the size
    of any code with minimum sum-rank distance >= d.
    """
    return _scheme_lp(sp, d, nonneg=True)


def theta_lp(sp: SpaceParams, k: int) -> SchemeLpResult:
    """Lovasz theta of the distance-(<= k) graph, via the symmetrized LP.

    Identical to ``delsarte_lp(sp, k + 1)`` except the distribution may take
    negative values off its forced support.  For these graphs the
    symmetrization is exact, so this *is* the theta number, computed exactly.
    """
    return _scheme_lp(sp, k + 1, nonneg=False)


# ---------------------------------------------------------------------------
# Krawtchouk specialization (independent cross-check path)
# ---------------------------------------------------------------------------

def krawtchouk(t: int, q: int, i: int, z: int) -> int:
    """K_i^{(t,q)}(z) = sum_j (-1)^j C(z,j) C(t-z, i-j) (q-1)^(i-j)."""
    if not (0 <= i <= t and 0 <= z <= t):
        raise ValueError(f"indices out of range: t={t}, i={i}, z={z}")
    total = 0
    for j in range(0, i + 1):
        total += (-1) ** j * math.comb(z, j) * math.comb(t - z, i - j) * (q - 1) ** (i - j)
    return total


def krawtchouk_lp(t: int, q: int, d: int) -> Fraction:
    """Hamming-space Delsarte LP assembled directly from Krawtchouk values.

    Deliberately bypasses the eigenmatrix recurrence so it can serve as an
    independent oracle for ``delsarte_lp`` on all-1x1-block spaces.
    """
    if not (1 <= d <= t + 1):
        raise ValueError(f"need 1 <= d <= t, got {d}")
    active = list(range(d, t + 1))
    rows, rhs = [], []
    for j in range(t + 1):
        rows.append([Fraction(krawtchouk(t, q, j, i)) for i in active])
        rhs.append(-Fraction(krawtchouk(t, q, j, 0)))
    lp = LinearProgram(
        objective=[Fraction(1)] * len(active),
        rows=rows,
        relations=[GE] * (t + 1),
        rhs=rhs,
        maximize=True,
    )
    sol = solve_or_raise(lp)
    return Fraction(1) + sol.value
