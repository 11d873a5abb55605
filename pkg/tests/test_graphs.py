"""Explicit distance-power graphs and the exact independence solver."""

import numpy as np
import pytest

from srkbounds.graphs import (
    DEFAULT_VERTEX_CAP,
    ExplicitGraph,
    IndependenceResult,
    adjacency_spectrum_check,
    build_graph,
    graph_spectrum_of_power,
    independence_number,
    vertex_cap,
    weight_table,
)
from srkbounds.space import SpaceParams, iter_vectors, sphere_volume
from srkbounds.spectrum import sum_rank_spectrum

from conftest import brute_max_independent_set


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "sp",
    [
        SpaceParams(2, (2, 1), (2, 1)),
        SpaceParams(3, (1, 1), (2, 1)),
        SpaceParams(4, (1,), (2,)),
    ],
)
def test_adjacency_matches_brute_distances(sp):
    vecs = list(iter_vectors(sp))
    for k in range(1, sp.N + 1):
        g = build_graph(sp, k)
        assert g.num_vertices == sp.size == len(vecs)
        for u in range(len(vecs)):
            for v in range(len(vecs)):
                dist = (vecs[u] - vecs[v]).srk()
                assert g.has_edge(u, v) == (1 <= dist <= k), (u, v, k)


def test_weight_table_matches_vector_order():
    sp = SpaceParams(2, (2, 1), (2, 2))
    wt = weight_table(sp)
    vecs = list(iter_vectors(sp))
    assert len(wt) == len(vecs)
    assert all(int(wt[i]) == vecs[i].srk() for i in range(len(vecs)))


def test_regularity_and_valency():
    sp = SpaceParams(2, (2, 2), (2, 2))
    for k in (1, 2, 3):
        g = build_graph(sp, k)
        expect = sum(sphere_volume(sp, w) for w in range(1, k + 1))
        assert g.valency == expect
        assert all(g.degree(v) == expect for v in range(g.num_vertices))
        assert not any(g.has_edge(v, v) for v in range(g.num_vertices))


def test_adjacency_array_agrees_with_has_edge():
    g = build_graph(SpaceParams(2, (2, 1), (2, 1)), 2)
    arr = g.adjacency_array()
    assert arr.shape == (g.num_vertices, g.num_vertices)
    assert bool((arr == arr.T).all())
    for u in range(g.num_vertices):
        for v in range(g.num_vertices):
            assert bool(arr[u, v]) == g.has_edge(u, v)


def test_power_spectrum_check():
    for sp in [SpaceParams(2, (2, 1), (2, 1)), SpaceParams(3, (1, 1), (1, 1))]:
        for k in range(1, sp.N + 1):
            g = build_graph(sp, k)
            spec = graph_spectrum_of_power(sp, k)
            assert adjacency_spectrum_check(g, spec)
    # a wrong spectrum must be rejected
    g1 = build_graph(SpaceParams(2, (2, 1), (2, 1)), 1)
    wrong = graph_spectrum_of_power(SpaceParams(2, (2, 1), (2, 1)), 2)
    assert not adjacency_spectrum_check(g1, wrong)


def test_vertex_cap_rules():
    sp = SpaceParams(2, (2, 2), (2, 2))  # 256 vertices
    with pytest.raises(ValueError):
        build_graph(sp, 1, cap=100)
    assert build_graph(sp, 1, cap=256).num_vertices == 256
    with pytest.raises(ValueError):
        build_graph(sp, 0)
    with pytest.raises(ValueError):
        build_graph(sp, sp.N + 1)


def test_vertex_cap_env(monkeypatch):
    assert vertex_cap() == DEFAULT_VERTEX_CAP
    monkeypatch.setenv("SRKB_CAP_VERTICES", "100")
    assert vertex_cap() == 100
    sp = SpaceParams(2, (2, 2), (2, 2))
    with pytest.raises(ValueError):
        build_graph(sp, 1)
    # an explicit cap argument beats the environment
    assert build_graph(sp, 1, cap=4096).num_vertices == 256


def test_to_dimacs_format(tmp_path):
    g = build_graph(SpaceParams(2, (1, 1), (1, 1)), 1)
    text = g.to_dimacs()
    assert text.endswith("\n")
    lines = text.strip().split("\n")
    n_edges = g.num_vertices * g.valency // 2
    assert lines[0] == f"p edge {g.num_vertices} {n_edges}"
    assert len(lines) == 1 + n_edges
    seen = set()
    for line in lines[1:]:
        tag, u, v = line.split()
        u, v = int(u), int(v)
        assert tag == "e" and 1 <= u < v <= g.num_vertices
        assert g.has_edge(u - 1, v - 1)
        seen.add((u, v))
    assert len(seen) == n_edges
    # writable round trip
    path = tmp_path / "g.dimacs"
    path.write_text(text)
    assert path.read_text() == text


# ---------------------------------------------------------------------------
# independence solver
# ---------------------------------------------------------------------------

BRUTE_CASES = [
    (SpaceParams(2, (1, 1, 1), (1, 1, 1)), 1),
    (SpaceParams(2, (1, 1, 1), (1, 1, 1)), 2),
    (SpaceParams(2, (1, 1, 1), (1, 1, 1)), 3),
    (SpaceParams(2, (2, 1), (2, 1)), 1),
    (SpaceParams(2, (2, 1), (2, 1)), 2),
    (SpaceParams(2, (2, 1), (2, 1)), 3),
    (SpaceParams(3, (1, 1), (2, 1)), 1),
    (SpaceParams(3, (1, 1), (2, 1)), 2),
    (SpaceParams(2, (2, 1), (2, 2)), 2),
]


@pytest.mark.parametrize("sp,k", BRUTE_CASES)
def test_independence_number_vs_brute(sp, k):
    g = build_graph(sp, k)
    expect = brute_max_independent_set(g.rows)
    res = independence_number(g)
    assert res.exact and res.value == expect
    assert res.lower == res.upper == expect


@pytest.mark.parametrize("sp,k", BRUTE_CASES[3:6])
def test_symmetry_toggle_is_value_neutral(sp, k):
    g = build_graph(sp, k)
    assert independence_number(g, symmetry=True).value == independence_number(
        g, symmetry=False
    ).value


def test_witness_is_a_valid_code():
    g = build_graph(SpaceParams(2, (2, 2), (2, 2)), 2)
    res = independence_number(g)
    assert res.value == 9  # frozen optimum for the two-2x2-block space, d = 3
    assert len(res.witness) == res.lower
    assert 0 in res.witness
    ws = sorted(res.witness)
    for i, u in enumerate(ws):
        for v in ws[i + 1 :]:
            assert not g.has_edge(u, v)


def test_more_frozen_optima():
    # ternary 2-block space, both powers
    g = build_graph(SpaceParams(3, (1, 1), (2, 2)), 1)
    assert independence_number(g).value == 9
    # binary 3-cube is bipartite: even-weight words
    g = build_graph(SpaceParams(2, (1, 1, 1), (1, 1, 1)), 1)
    assert independence_number(g).value == 4


def test_zero_budget_yields_interval():
    g = build_graph(SpaceParams(2, (2, 2), (2, 2)), 2)
    res = independence_number(g, time_budget=0)
    assert not res.exact
    assert 1 <= res.lower <= 9 <= res.upper
    with pytest.raises(ValueError):
        _ = res.value
    # the witness always matches the constructive lower bound
    assert len(res.witness) == res.lower


def test_independence_result_contract():
    r = IndependenceResult(lower=3, upper=3, nodes=10, elapsed=0.0, witness=(0, 5, 9))
    assert r.exact and r.value == 3
    r2 = IndependenceResult(lower=2, upper=4, nodes=10, elapsed=0.0)
    assert not r2.exact
    with pytest.raises(ValueError):
        _ = r2.value
