"""Closed-form upper bounds on sum-rank-metric code size.

Eight classical bounds: four obtained by inducing the code into a Hamming
space over F_{q^m} (Singleton / Hamming / Plotkin / Elias variants), the
sum-rank Singleton bound, the Total-Distance bound, and the two
sphere-packing bounds (plain and projective).

Every bound returns a :class:`BoundResult`.  A bound that does not apply to
the given parameters (Plotkin and Total-Distance have genuine applicability
conditions) comes back with ``applicable=False`` and no values; table
emitters render that as 0, following the convention of the reference tables.
Values are exact: ``value_exact`` is a rational, ``value_int`` its floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from .space import SpaceParams, ball_volume


class BoundMethod(str, Enum):
    INDUCED_SINGLETON = "induced-singleton"
    INDUCED_HAMMING = "induced-hamming"
    INDUCED_PLOTKIN = "induced-plotkin"
    INDUCED_ELIAS = "induced-elias"
    SINGLETON = "singleton"
    TOTAL_DISTANCE = "total-distance"
    SPHERE_PACKING = "sphere-packing"
    PROJECTIVE_SPHERE_PACKING = "projective-sphere-packing"
    RATIO_TYPE = "ratio-type"
    DELSARTE = "delsarte-lp"
    LOVASZ_THETA = "lovasz-theta"
    SCHRIJVER_SDP = "schrijver-sdp"


@dataclass(frozen=True)
class BoundResult:
    """A named bound value with exact and floored forms plus metadata."""

    method: BoundMethod
    value_exact: Optional[Fraction]
    value_int: Optional[int]
    applicable: bool
    detail: str = ""

    def __post_init__(self):
        if self.applicable:
            if self.value_exact is None or self.value_int is None:
                raise ValueError("applicable result must carry values")
            if self.value_int != self.value_exact.numerator // self.value_exact.denominator:
                raise ValueError("value_int must be the floor of value_exact")
            if self.value_int < 1:
                raise ValueError(f"bound collapsed below 1: {self.value_exact}")
        else:
            if self.value_exact is not None or self.value_int is not None:
                raise ValueError("inapplicable result must not carry values")

    @property
    def table_value(self) -> int:
        """Integer as printed in the reference tables (0 when inapplicable)."""
        return self.value_int if self.applicable else 0


def _ok(
    method: BoundMethod, value: Fraction, detail: str = "", cap: Optional[int] = None
) -> BoundResult:
    """Successful bound; values above the trivial cap |V| are clamped to it
    (the reference tables print the clamped number) with the raw value noted."""
    value = Fraction(value)
    if cap is not None and value > cap:
        note = f"raw value {value} exceeds |V|, clamped"
        detail = f"{detail}; {note}" if detail else note
        value = Fraction(cap)
    return BoundResult(
        method=method,
        value_exact=value,
        value_int=value.numerator // value.denominator,
        applicable=True,
        detail=detail,
    )


def _na(method: BoundMethod, detail: str) -> BoundResult:
    return BoundResult(method, None, None, False, detail)


def _check_d(sp: SpaceParams, d: int) -> None:
    if not (1 <= d <= sp.N):
        raise ValueError(f"need 1 <= d <= N = {sp.N}, got d = {d}")


def induced_singleton(sp: SpaceParams, d: int) -> BoundResult:
    """q^{m(N-d+1)} with m the largest block width and N the length sum."""
    _check_d(sp, d)
    m = max(sp.m)
    return _ok(BoundMethod.INDUCED_SINGLETON, Fraction(sp.q ** (m * (sp.N - d + 1))), cap=sp.size)


def _hamming_ball(count: int, alphabet: int, radius: int) -> int:
    """Volume of a Hamming ball of the given radius in alphabet^count."""
    return sum(math.comb(count, s) * (alphabet - 1) ** s for s in range(radius + 1))


def induced_hamming(sp: SpaceParams, d: int) -> BoundResult:
    """Hamming-space sphere packing after inducing into F_{q^m}^N."""
    _check_d(sp, d)
    m = max(sp.m)
    qm = sp.q**m
    ball = _hamming_ball(sp.N, qm, (d - 1) // 2)
    return _ok(
        BoundMethod.INDUCED_HAMMING,
        Fraction(sp.q ** (m * sp.N), ball),
        detail=f"ball volume {ball}",
        cap=sp.size,
    )


def induced_plotkin(sp: SpaceParams, d: int) -> BoundResult:
    """Plotkin bound in the induced Hamming space; needs d large."""
    _check_d(sp, d)
    m = max(sp.m)
    qm = sp.q**m
    denom = qm * d - (qm - 1) * sp.N
    if denom <= 0:
        return _na(
            BoundMethod.INDUCED_PLOTKIN,
            f"requires d > (q^m-1)N/q^m = {Fraction((qm - 1) * sp.N, qm)}",
        )
    return _ok(BoundMethod.INDUCED_PLOTKIN, Fraction(qm * d, denom), cap=sp.size)


def induced_elias(sp: SpaceParams, d: int) -> BoundResult:
    """Elias bound in the induced Hamming space, best radius reported."""
    _check_d(sp, d)
    m = max(sp.m)
    qm = sp.q**m
    N = sp.N
    best: Optional[Tuple[int, Fraction, int]] = None  # (floor, exact, w)
    total = sp.q ** (m * N)
    w = 0
    while qm * w < N * (qm - 1):  # strict w < N(q^m-1)/q^m
        denom = qm * w * w - 2 * N * w * (qm - 1) + (qm - 1) * N * d
        if denom > 0:
            val = Fraction(N * d * (qm - 1), denom) * Fraction(total, _hamming_ball(N, qm, w))
            fl = val.numerator // val.denominator
            if best is None or fl < best[0]:
                best = (fl, val, w)
        w += 1
    if best is None:
        return _na(BoundMethod.INDUCED_ELIAS, "no radius with positive denominator")
    return _ok(BoundMethod.INDUCED_ELIAS, best[1], detail=f"w = {best[2]}", cap=sp.size)


def _front_decomposition(amount: int, parts: Tuple[int, ...]) -> Tuple[int, int]:
    """Write ``amount`` = parts[0] + ... + parts[j-1] + delta with
    0 <= delta <= parts[j] - 1; returns (j, delta)."""
    j = 0
    rest = amount
    while j < len(parts) and rest >= parts[j]:
        rest -= parts[j]
        j += 1
    if j >= len(parts) and rest > 0:
        raise ValueError(f"amount {amount} exceeds total {sum(parts)}")
    return j, rest


def singleton(sp: SpaceParams, d: int) -> BoundResult:
    """Sum-rank Singleton bound; sensitive to the block order given."""
    _check_d(sp, d)
    j, delta = _front_decomposition(d - 1, sp.n)
    exponent = sum(sp.m[i] * sp.n[i] for i in range(j, sp.t)) - sp.m[j] * delta
    detail = f"j = {j + 1}, delta = {delta}"
    canon = SpaceParams.normalized(sp.q, sp.n, sp.m)
    if canon.n != sp.n or canon.m != sp.m:
        jc, dc = _front_decomposition(d - 1, canon.n)
        exp_c = sum(canon.m[i] * canon.n[i] for i in range(jc, canon.t)) - canon.m[jc] * dc
        detail += f"; canonical block order gives q^{exp_c}"
    return _ok(BoundMethod.SINGLETON, Fraction(sp.q**exponent), detail=detail, cap=sp.size)


def total_distance(sp: SpaceParams, d: int) -> BoundResult:
    """Total-Distance bound; applicable only when d > N - sum q^{-m_i}."""
    _check_d(sp, d)
    qsum = sum(Fraction(1, sp.q**mi) for mi in sp.m)
    if d <= sp.N - qsum:
        return _na(
            BoundMethod.TOTAL_DISTANCE,
            f"requires d > N - {qsum} = {sp.N - qsum}",
        )
    return _ok(
        BoundMethod.TOTAL_DISTANCE,
        Fraction(d - sp.N + sp.t) / (d - sp.N + qsum),
        cap=sp.size,
    )


def sphere_packing(sp: SpaceParams, d: int) -> BoundResult:
    """|V| / (volume of the ball of radius floor((d-1)/2))."""
    _check_d(sp, d)
    r = (d - 1) // 2
    ball = ball_volume(sp, r)
    return _ok(
        BoundMethod.SPHERE_PACKING,
        Fraction(sp.size, ball),
        detail=f"radius {r}, ball volume {ball}",
    )


def projective_sphere_packing(sp: SpaceParams, d: int) -> BoundResult:
    """Sphere packing after projecting away the first d-3 length units.

    The first blocks are consumed greedily by d-3; the partially consumed
    block keeps its width.  Radius-1 balls are used in the reduced space.
    """
    if not (3 <= d <= sp.N):
        raise ValueError(f"need 3 <= d <= N = {sp.N}, got d = {d}")
    ell, delta = _front_decomposition(d - 3, sp.n)
    assert ell < sp.t and delta <= sp.n[ell] - 1, "decomposition uniqueness violated"
    n_new = (sp.n[ell] - delta,) + sp.n[ell + 1 :]
    m_new = sp.m[ell:]
    reduced = SpaceParams.normalized(sp.q, n_new, m_new)
    v1 = ball_volume(reduced, 1)
    return _ok(
        BoundMethod.PROJECTIVE_SPHERE_PACKING,
        Fraction(reduced.size, v1),
        detail=f"l = {ell}, delta' = {delta}, reduced space {reduced}",
    )


ALL_CLASSICAL = {
    BoundMethod.INDUCED_SINGLETON: induced_singleton,
    BoundMethod.INDUCED_HAMMING: induced_hamming,
    BoundMethod.INDUCED_PLOTKIN: induced_plotkin,
    BoundMethod.INDUCED_ELIAS: induced_elias,
    BoundMethod.SINGLETON: singleton,
    BoundMethod.TOTAL_DISTANCE: total_distance,
    BoundMethod.SPHERE_PACKING: sphere_packing,
    BoundMethod.PROJECTIVE_SPHERE_PACKING: projective_sphere_packing,
}


def classical_bounds(sp: SpaceParams, d: int) -> dict:
    """All eight closed-form bounds keyed by method."""
    return {method: fn(sp, d) for method, fn in ALL_CLASSICAL.items()}
