"""Eigenvalue (Ratio-type) bounds for sum-rank-metric codes.

All bounds here consume only the exact spectrum (distinct adjacency
eigenvalues with multiplicities): the general polynomial bound via spectral
moments, the optimal d=3 closed form, closed forms for two structured block
profiles, the minor-polynomial subset formula, and the divided-difference LP
whose optimum equals the best polynomial choice.  Everything is exact
rational arithmetic; callers floor the returned value for table display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linprog import EQ, LinearProgram, solve_or_raise
from .space import SpaceParams
from .spectrum import Spectrum, bilinear_forms_spectrum, sum_rank_spectrum


@dataclass(frozen=True)
class RtPolynomial:
    """Polynomial with exact rational coefficients, lowest degree first."""

    coefficients: Tuple[Fraction, ...]
    max_degree: Optional[int] = None

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coefficients", coeffs)
        if self.max_degree is not None and self.degree > self.max_degree:
            raise ValueError(
                f"degree {self.degree} exceeds allowed maximum {self.max_degree}"
            )

    @property
    def degree(self) -> int:
        d = len(self.coefficients) - 1
        while d > 0 and self.coefficients[d] == 0:
            d -= 1
        return d

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def ratio_type_poly_bound(spec: Spectrum, d: int, p: RtPolynomial) -> Fraction:
    """|V| * (W(p) - lambda(p)) / (p(theta_0) - lambda(p)).

    W(p) is the constant diagonal of p(A), computed spectrally as
    (1/|V|) sum_j m(theta_j) p(theta_j) -- valid because these graphs are
    walk-regular.  lambda(p) is the minimum of p over the non-principal
    distinct eigenvalues.  Requires p(theta_0) > lambda(p).
    """
    if p.degree > d - 1:
        raise ValueError(f"polynomial degree {p.degree} exceeds d-1 = {d-1}")
    if spec.r < 1:
        raise ValueError("need at least two distinct eigenvalues")
    size = spec.vertex_count
    values = [p(th) for th in spec.eigenvalues]
    w = Fraction(
        sum(m * v for m, v in zip(spec.multiplicities, values)), size
    )
    lam = min(values[1:])
    top = values[0]
    if top <= lam:
        raise ValueError("vacuous polynomial: p(theta_0) <= min over others")
    return size * (w - lam) / (top - lam)


def ratio_type_d3(spec: Spectrum) -> Fraction:
    """Optimal Ratio-type bound at minimum distance 3.

    With theta_i the largest eigenvalue <= -1, the bound is
    |V| (theta_0 + theta_i theta_{i-1}) / ((theta_0-theta_i)(theta_0-theta_{i-1})).
    """
    if spec.r < 2:
        raise ValueError("need at least three distinct eigenvalues")
    idx = None
    for j, th in enumerate(spec.eigenvalues):
        if th <= -1:
            idx = j
            break
    if idx is None or idx == 0:
        raise ArithmeticError("no suitable eigenvalue <= -1 below the valency")
    th0 = spec.eigenvalues[0]
    thi = spec.eigenvalues[idx]
    thim1 = spec.eigenvalues[idx - 1]
    return Fraction(
        spec.vertex_count * (th0 + thi * thim1),
        (th0 - thi) * (th0 - thim1),
    )


def ratio_type_family_closed_form(q: int, m: int, n: int, t: int) -> Fraction:
    """Published d=3 family formula for profiles (n,1,...,1) x (m,1,...,1).

    Requires m >= max(n, 2).  With eps = (t-1) mod q this is the value of the
    degree-2 minor polynomial with roots -(eps+1) and q-1-eps.  Every
    eigenvalue of these product spectra is congruent to -t mod q (block
    eigenvalues are all -1 mod q, the 1x1 chain contributes -(t-1)), and the
    roots are consecutive integers of that same residue class, so no
    eigenvalue lies strictly between them: the polynomial is always feasible
    and the formula is always a valid upper bound, at most the sphere-packing
    value.  It equals the optimal d=3 bound (ratio_type_d3) exactly when
    -(eps+1) is an eigenvalue and, for eps > 0, q-1-eps is one too (at eps = 0
    the value degenerates to |V|/(valency+1), which matches the optimum iff -1
    is an eigenvalue); when the bottom eigenvalue chain stops short of -1 it
    is strictly weaker (smallest case q=2, m=3, n=2, t=2: 16/3 vs 112/27).
    """
    if m < 2 or m < n or n < 1 or t < 1 or q < 2:
        raise ValueError(f"profile out of range: q={q}, m={m}, n={n}, t={t}")
    if t == 1:
        return ratio_type_d3(bilinear_forms_spectrum(q, n, m))
    eps = (t - 1) % q
    dd = (q**m - 1) * (q**n - 1) + (q - 1) ** 2 * (t - 1)
    num = q ** (m * n + t - 1) * (q - 1) * (dd + (q - 1) * (eps + 1) * (eps - q + 1))
    den = (dd + (eps + 1) * (q - 1)) * (dd - (q - 1) ** 2 + eps * (q - 1))
    return Fraction(num, den)


def ratio_type_22_closed_form(q: int, t: int) -> Fraction:
    """Closed form of the d=3 bound for the all-(2x2)-blocks profile, t >= 2."""
    if t < 2 or q < 2:
        raise ValueError(f"need t >= 2 and prime power q, got q={q}, t={t}")
    eps = (t * q + t - 1) % (q**2)
    big = t * (q**2 - 1) * (q + 1)
    num = q ** (4 * t) * (big - (1 + eps) * (q**2 - 1 - eps))
    den = (big + 1 + eps) * (big + 1 + eps - q**2)
    return Fraction(num, den)


def _subset_point(
    spec: Spectrum, subset: Sequence[int]
) -> Optional[List[Fraction]]:
    """Evaluations of the degree-(d-1) polynomial vanishing on ``subset`` and
    normalized to 1 at theta_0; None if it dips below zero somewhere."""
    thetas = spec.eigenvalues
    th0 = thetas[0]
    denom = Fraction(1)
    for i in subset:
        denom *= th0 - thetas[i]
    xs: List[Fraction] = []
    for j, th in enumerate(thetas):
        if j in subset:
            xs.append(Fraction(0))
            continue
        numer = Fraction(1)
        for i in subset:
            numer *= th - thetas[i]
        val = numer / denom
        if val < 0:
            return None
        xs.append(val)
    return xs


def minor_closed_form(spec: Spectrum, d: int) -> Fraction:
    """Minimum of sum_{j not in I} m(theta_j) prod_{i in I} (theta_j-theta_i)/(theta_0-theta_i)
    over (d-1)-subsets I of {1..r} whose induced evaluations stay nonnegative.

    The nonnegativity filter keeps exactly the subsets that are feasible
    choices of a minor polynomial; dropping it lets the raw minimum dip below
    the true optimum (it can even go negative), which would not bound
    anything.  With the filter the value coincides with ratio_type_lp.
    """
    r = spec.r
    if d - 1 > r:
        raise ValueError(f"d-1 = {d-1} exceeds the number of non-principal eigenvalues {r}")
    if d < 1:
        raise ValueError("need d >= 1")
    best: Optional[Fraction] = None
    for subset in itertools.combinations(range(1, r + 1), d - 1):
        xs = _subset_point(spec, subset)
        if xs is None:
            continue
        val = sum(
            (m * x for m, x in zip(spec.multiplicities, xs)), Fraction(0)
        )
        if best is None or val < best:
            best = val
    if best is None:
        raise ArithmeticError("no feasible minor polynomial; unexpected for these spectra")
    return best


def _divided_difference_rows(thetas: Sequence[int], d: int) -> List[List[Fraction]]:
    """Rows of the constraint f[theta_0..theta_s] = 0 for s = d..r, with the
    divided difference expanded as sum_k x_k / prod_{l != k} (theta_k - theta_l)."""
    rows = []
    for s in range(d, len(thetas)):
        row = []
        for k in range(len(thetas)):
            if k > s:
                row.append(Fraction(0))
                continue
            denom = 1
            for l in range(s + 1):
                if l != k:
                    denom *= thetas[k] - thetas[l]
            row.append(Fraction(1, denom))
        rows.append(row)
    return rows


def ratio_type_lp(spec: Spectrum, d: int) -> Fraction:
    """Best Ratio-type bound over all polynomials of degree <= d-1.

    minimize sum_j m(theta_j) x_j  subject to  x_0 = 1, x_j >= 0, and all
    Newton divided differences f[theta_0..theta_s] for s = d..r vanishing
    (equivalently: the x_j are the evaluations of a degree <= d-1
    polynomial).  Solved exactly.
    """
    r = spec.r
    if d > r + 1:
        raise ValueError(f"d = {d} exceeds r+1 = {r+1}")
    nvars = r + 1
    rows = _divided_difference_rows(spec.eigenvalues, d)
    rels = [EQ] * len(rows)
    rhs = [Fraction(0)] * len(rows)
    rows.append([Fraction(1)] + [Fraction(0)] * r)
    rels.append(EQ)
    rhs.append(Fraction(1))
    lp = LinearProgram(
        objective=[Fraction(m) for m in spec.multiplicities],
        rows=rows,
        relations=rels,
        rhs=rhs,
        maximize=False,
    )
    sol = solve_or_raise(lp)
    return sol.value


def ratio_type_bound(sp: SpaceParams, d: int) -> Fraction:
    """Convenience entry point: the LP-optimal Ratio-type bound for a space."""
    return ratio_type_lp(sum_rank_spectrum(sp), d)
