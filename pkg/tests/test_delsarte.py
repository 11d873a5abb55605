"""Association-scheme LP machinery: eigenmatrices, Delsarte LP, theta LP."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from srkbounds.delsarte import (
    block_eigenmatrix,
    delsarte_lp,
    index_tuples,
    krawtchouk,
    krawtchouk_lp,
    scheme_eigenmatrix,
    theta_lp,
)
from srkbounds.space import SpaceParams, rank_count, sphere_volume

from conftest import SMALL_SPACES, brute_max_independent_set


# ---------------------------------------------------------------------------
# eigenmatrices
# ---------------------------------------------------------------------------

EIGEN_CASES = [(q, n, m) for q in (2, 3, 4) for m in (1, 2, 3) for n in range(1, m + 1)]


@pytest.mark.parametrize("q,n,m", EIGEN_CASES)
def test_block_eigenmatrix_valencies_and_self_duality(q, n, m):
    P = block_eigenmatrix(q, n, m)
    size = q ** (n * m)
    assert len(P) == n + 1 and all(len(row) == n + 1 for row in P)
    # column 0 is all ones, row 0 lists the rank-class valencies
    assert all(row[0] == 1 for row in P)
    assert list(P[0]) == [rank_count(n, m, v, q) for v in range(n + 1)]
    # the scheme is self-dual: P^2 = |V| I
    for i in range(n + 1):
        for j in range(n + 1):
            got = sum(P[i][l] * P[l][j] for l in range(n + 1))
            assert got == (size if i == j else 0)


def test_block_eigenmatrix_rejects_bad_shapes():
    with pytest.raises(ValueError):
        block_eigenmatrix(2, 0, 2)
    with pytest.raises(ValueError):
        block_eigenmatrix(2, 3, 2)


@pytest.mark.parametrize(
    "sp",
    [
        SpaceParams(2, (2, 1), (2, 2)),
        SpaceParams(2, (2, 2), (2, 2)),
        SpaceParams(3, (1, 1, 1), (2, 1, 1)),
        SpaceParams(4, (2,), (2,)),
    ],
)
def test_scheme_eigenmatrix_kronecker_structure(sp):
    P = scheme_eigenmatrix(sp)
    idx = list(index_tuples(sp))
    k = len(idx)
    assert len(P) == k and all(len(row) == k for row in P)
    assert all(row[0] == 1 for row in P)
    # row 0 entries are the class valencies; summed over a shell they give
    # the sphere volume, which test_space pins against brute enumeration
    for j, tup in enumerate(idx):
        expect = 1
        for n_i, m_i, v_i in zip(sp.n, sp.m, tup):
            expect *= rank_count(n_i, m_i, v_i, sp.q)
        assert P[0][j] == expect
    for w in range(sp.N + 1):
        shell = sum(P[0][j] for j, tup in enumerate(idx) if sum(tup) == w)
        assert shell == sphere_volume(sp, w)
    # self-duality survives the Kronecker product
    for i in range(k):
        for j in range(k):
            got = sum(P[i][l] * P[l][j] for l in range(k))
            assert got == (sp.size if i == j else 0)


# ---------------------------------------------------------------------------
# Delsarte LP
# ---------------------------------------------------------------------------

def test_delsarte_lp_degenerate_distances():
    sp = SpaceParams(2, (2, 1), (2, 1))
    assert delsarte_lp(sp, 1).value == sp.size
    # d = N + 1 forbids every nonzero weight: only the zero word survives
    assert delsarte_lp(sp, sp.N + 1).value == 1
    with pytest.raises(ValueError):
        delsarte_lp(sp, 0)
    with pytest.raises(ValueError):
        delsarte_lp(sp, sp.N + 2)


def test_delsarte_lp_monotone_and_bounded(small_spaces):
    for sp in small_spaces:
        prev = None
        for d in range(1, sp.N + 2):
            val = delsarte_lp(sp, d).value
            assert 1 <= val <= sp.size
            if prev is not None:
                assert val <= prev
            prev = val


def test_delsarte_lp_upper_bounds_true_optimum():
    """The LP value must dominate the exact max code size (brute force)."""
    from srkbounds.graphs import build_graph

    for sp in [
        SpaceParams(2, (2, 1), (2, 1)),
        SpaceParams(2, (1, 1, 1), (2, 1, 1)),
        SpaceParams(3, (1, 1), (2, 1)),
        SpaceParams(2, (2, 2), (2, 2)),
    ]:
        for d in range(2, sp.N + 1):
            if sp.size > 64 and d == 2:
                # the naive oracle chokes on large sparse graphs; the d >= 3
                # cases on this space still exercise the 256-vertex path
                continue
            g = build_graph(sp, d - 1)
            alpha = brute_max_independent_set(g.rows)
            assert delsarte_lp(sp, d).value >= alpha


def test_theta_relaxation_dominates_delsarte():
    """Dropping the nonnegativity of the distribution can only help."""
    for sp in SMALL_SPACES[:8]:
        for d in range(2, sp.N + 1):
            assert theta_lp(sp, d - 1).value >= delsarte_lp(sp, d).value


def test_known_values():
    # q=2, n=(3,2), m=(3,2), d=3: the LP lands strictly below 2^7 = 128
    res = delsarte_lp(SpaceParams(2, (3, 2), (3, 2)), 3)
    assert res.floor == 109
    # ternary length-5 Hamming profile, d=3
    assert delsarte_lp(SpaceParams(3, (1,) * 5, (1,) * 5), 3).floor == 18
    # binary length-7 Hamming code parameters are LP-tight
    assert delsarte_lp(SpaceParams(2, (1,) * 7, (1,) * 7), 3).value == 16


@pytest.mark.parametrize("q,n,m", [(2, 1, 1), (2, 2, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2)])
def test_single_block_meets_singleton(q, n, m):
    """One rank-metric block: LP optimum is exactly q^{m(n-d+1)}."""
    sp = SpaceParams(q, (n,), (m,))
    for d in range(1, n + 1):
        assert delsarte_lp(sp, d).value == Fraction(q) ** (m * (n - d + 1))


# ---------------------------------------------------------------------------
# result object
# ---------------------------------------------------------------------------

def test_result_floor_and_certificate():
    sp = SpaceParams(2, (1, 1, 1, 1), (1, 1, 1, 1))
    res = delsarte_lp(sp, 3)
    assert res.floor == int(res.value) if res.value.denominator == 1 else res.floor == res.value.numerator // res.value.denominator
    cert = res.as_certificate()
    assert set(cert) == {"value", "distribution", "orbit_sizes", "dual"}
    num, den = cert["value"].split("/")
    assert Fraction(int(num), int(den)) == res.value
    # the distribution in the certificate reproduces the objective value
    total = sum(
        Fraction(int(v.split("/")[0]), int(v.split("/")[1]))
        for v in cert["distribution"].values()
    )
    assert total == res.value
    # zero word is present with mass one
    zero_key = ",".join("0" for _ in sp.n)
    assert cert["distribution"][zero_key] == "1/1"
    assert cert["orbit_sizes"][zero_key] == 1


def test_distribution_is_nonnegative_and_respects_support():
    sp = SpaceParams(2, (2, 1), (2, 2))
    d = 3
    res = delsarte_lp(sp, d)
    for key, mass in res.distribution.items():
        assert mass >= 0
        w = sum(key)
        assert w == 0 or w >= d


# ---------------------------------------------------------------------------
# Krawtchouk specialization (independent oracle path)
# ---------------------------------------------------------------------------

@given(
    t=st.integers(min_value=1, max_value=7),
    q=st.sampled_from([2, 3, 4]),
)
def test_krawtchouk_orthogonality(t, q):
    for i in range(t + 1):
        for j in range(i, t + 1):
            acc = sum(
                math.comb(t, z) * (q - 1) ** z * krawtchouk(t, q, i, z) * krawtchouk(t, q, j, z)
                for z in range(t + 1)
            )
            expect = q**t * math.comb(t, i) * (q - 1) ** i if i == j else 0
            assert acc == expect


def test_krawtchouk_range_check():
    with pytest.raises(ValueError):
        krawtchouk(3, 2, 4, 0)
    with pytest.raises(ValueError):
        krawtchouk(3, 2, 0, -1)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_hamming_profile_matches_krawtchouk_lp(q, t):
    sp = SpaceParams(q, (1,) * t, (1,) * t)
    for d in range(1, t + 2):
        assert delsarte_lp(sp, d).value == krawtchouk_lp(t, q, d)


def test_krawtchouk_lp_range_check():
    with pytest.raises(ValueError):
        krawtchouk_lp(4, 2, 0)
    with pytest.raises(ValueError):
        krawtchouk_lp(4, 2, 6)
