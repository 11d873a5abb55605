"""Exact spectra of bilinear forms graphs and their Cartesian products.

The sum-rank-metric graph of a space is the Cartesian product of the
bilinear forms graphs of its blocks, so its distinct eigenvalues are all
sums of one eigenvalue per factor.  Eigenvalues are exact integers;
multiplicities are exact (often astronomically large) integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .space import SpaceParams


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues (descending) with exact multiplicities."""

    eigenvalues: tuple[int, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.eigenvalues) != len(self.multiplicities) or not self.eigenvalues:
            raise ValueError("eigenvalues/multiplicities length mismatch")
        if any(self.eigenvalues[i] <= self.eigenvalues[i + 1] for i in range(len(self.eigenvalues) - 1)):
            raise ValueError("eigenvalues must be strictly decreasing")
        if any(m <= 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @property
    def valency(self) -> int:
        return self.eigenvalues[0]

    @property
    def vertex_count(self) -> int:
        return sum(self.multiplicities)

    @property
    def r(self) -> int:
        """Index of the last distinct eigenvalue (there are r+1 of them)."""
        return len(self.eigenvalues) - 1

    def moment(self, k: int) -> int:
        """Sum of m(theta) * theta^k; k=1 gives the trace (0 for a graph)."""
        return sum(m * th**k for th, m in zip(self.eigenvalues, self.multiplicities))

    def items(self):
        return zip(self.eigenvalues, self.multiplicities)


def _exact_div(num: int, den: int) -> int:
    quotient, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"expected exact division: {num}/{den}")
    return quotient


def bilinear_forms_spectrum(q: int, n: int, m: int) -> Spectrum:
    """Spectrum of the graph on n x m matrices over F_q, adjacent iff the
    difference has rank 1.

    theta_j = ((q^(n-j) - 1)(q^m - q^j) - q^j + 1)/(q - 1) for j = 0..n, with
    multiplicity prod_{i<j} (q^(n-i) - 1)(q^m - q^i)/(q^(i+1) - 1).
    """
    if m < n or n < 1:
        raise ValueError("need m >= n >= 1")
    eigs = []
    mults = []
    mult = 1
    for j in range(n + 1):
        theta = _exact_div((q ** (n - j) - 1) * (q**m - q**j) - q**j + 1, q - 1)
        eigs.append(theta)
        mults.append(mult)
        mult = _exact_div(mult * (q ** (n - j) - 1) * (q**m - q**j), q ** (j + 1) - 1)
    return Spectrum(tuple(eigs), tuple(mults))


def hamming_spectrum(t: int, q: int) -> Spectrum:
    """Spectrum of the Hamming graph H(t, q): theta_j = q(t-j) - t with
    multiplicity C(t,j)(q-1)^j."""
    if t < 1 or q < 2:
        raise ValueError("need t >= 1 and q >= 2")
    eigs = tuple(q * (t - j) - t for j in range(t + 1))
    mults = tuple(math.comb(t, j) * (q - 1) ** j for j in range(t + 1))
    return Spectrum(eigs, mults)


def cartesian_product_spectrum(parts: list[Spectrum]) -> Spectrum:
    """Spectrum of the Cartesian product: eigenvalues are all sums of one
    eigenvalue per factor, multiplicities accumulated per distinct sum."""
    if not parts:
        raise ValueError("need at least one factor")
    acc: dict[int, int] = {0: 1}
    for part in parts:
        nxt: dict[int, int] = {}
        for s, ms in acc.items():
            for th, mt in part.items():
                key = s + th
                nxt[key] = nxt.get(key, 0) + ms * mt
        acc = nxt
    eigs = sorted(acc, reverse=True)
    return Spectrum(tuple(eigs), tuple(acc[e] for e in eigs))


def sum_rank_spectrum(sp: SpaceParams) -> Spectrum:
    """Spectrum of the sum-rank-metric graph of the space (adjacency = sum-rank
    distance 1): Cartesian product of the per-block bilinear forms spectra."""
    return cartesian_product_spectrum(
        [bilinear_forms_spectrum(sp.q, ni, mi) for ni, mi in zip(sp.n, sp.m)]
    )
