"""Explicit sum-rank-metric graphs, their distance powers, and a brute-force
independence-number oracle.

Vertices are enumerated in mixed-radix order over the flattened matrix
entries (first block first, row-major inside a block, first digit most
significant), so vertex 0 is the zero tuple.  Because the metric is
translation invariant the graph is a Cayley graph: one weight table of size
|V| determines all adjacencies, and rows are materialized as bitsets only
for the branch-and-bound search.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .fields import get_field
from .space import SpaceParams
from .spectrum import Spectrum, sum_rank_spectrum

DEFAULT_VERTEX_CAP = 4096
_CAP_ENV = "SRKB_CAP_VERTICES"


def vertex_cap() -> int:
    raw = os.environ.get(_CAP_ENV)
    return int(raw) if raw else DEFAULT_VERTEX_CAP


@dataclass
class ExplicitGraph:
    """A sum-rank-metric graph power with bitset adjacency rows."""

    sp: SpaceParams
    power: int
    weight_table: np.ndarray  # srk weight of each vertex (distance from 0)
    rows: List[int]  # rows[i] = bitset of neighbours of vertex i

    @property
    def num_vertices(self) -> int:
        return len(self.rows)

    @property
    def valency(self) -> int:
        return self.rows[0].bit_count()

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def adjacency_array(self) -> np.ndarray:
        """Dense boolean adjacency matrix (unpacked from the bitset rows)."""
        n = self.num_vertices
        nbytes = (n + 7) // 8
        buf = np.frombuffer(
            b"".join(row.to_bytes(nbytes, "little") for row in self.rows),
            dtype=np.uint8,
        ).reshape(n, nbytes)
        return np.unpackbits(buf, axis=1, bitorder="little")[:, :n].astype(bool)

    def to_dimacs(self) -> str:
        """DIMACS graph format (1-based vertices), edges listed once."""
        lines = []
        edges = []
        n = self.num_vertices
        for u in range(n):
            row = self.rows[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    edges.append((u + 1, v + 1))
                row >>= 1
                v += 1
        lines.append(f"p edge {n} {len(edges)}")
        for u, v in edges:
            lines.append(f"e {u} {v}")
        return "\n".join(lines) + "\n"


def _block_rank_tables(sp: SpaceParams) -> List[np.ndarray]:
    """For each block, the rank of every matrix in mixed-radix entry order."""
    gf = get_field(sp.q)
    tables = []
    for n_i, m_i in zip(sp.n, sp.m):
        dims = n_i * m_i
        count = sp.q**dims
        ranks = np.empty(count, dtype=np.int8)
        for idx in range(count):
            rest = idx
            digits = [0] * dims
            for pos in range(dims - 1, -1, -1):
                digits[pos] = rest % sp.q
                rest //= sp.q
            rows = [digits[r * m_i : (r + 1) * m_i] for r in range(n_i)]
            ranks[idx] = gf.matrix_rank(rows)
        tables.append(ranks)
    return tables


def _orbit_invariants(sp: SpaceParams) -> List[tuple]:
    """Complete invariant of the vertex orbits under the stabilizer of 0.

    The stabilizer contains all products of invertible row/column maps per
    block together with permutations of identical-shape blocks; its orbits
    are classified by the block rank profile up to reordering within each
    run of identical shapes.  These maps preserve every distance class, so
    they are automorphisms of every power graph fixing vertex 0.
    """
    tables = _block_rank_tables(sp)
    sizes = [sp.q ** (n_i * m_i) for n_i, m_i in zip(sp.n, sp.m)]
    total = sp.size
    profiles = np.zeros((total, sp.t), dtype=np.int8)
    rest = np.arange(total, dtype=np.int64)
    for i in range(sp.t - 1, -1, -1):
        profiles[:, i] = tables[i][(rest % sizes[i]).astype(np.int64)]
        rest //= sizes[i]
    spans: List[Tuple[int, int]] = []
    start = 0
    for _key, grp in itertools.groupby(zip(sp.n, sp.m)):
        cnt = len(list(grp))
        spans.append((start, start + cnt))
        start += cnt
    return [
        tuple(
            tuple(sorted(profiles[v, a:b].tolist(), reverse=True)) for a, b in spans
        )
        for v in range(total)
    ]


def weight_table(sp: SpaceParams) -> np.ndarray:
    """Sum-rank weight of every vertex, in enumeration order."""
    tables = _block_rank_tables(sp)
    sizes = [sp.q ** (n_i * m_i) for n_i, m_i in zip(sp.n, sp.m)]
    total = sp.size
    weights = np.zeros(total, dtype=np.int16)
    idx = np.arange(total, dtype=np.int64)
    rest = idx
    for bsize, ranks in zip(reversed(sizes), reversed(tables)):
        weights += ranks[(rest % bsize).astype(np.int64)].astype(np.int16)
        rest = rest // bsize
    return weights


def _digit_matrix(sp: SpaceParams):
    """Digit expansion of every vertex index plus the field subtraction table."""
    gf = get_field(sp.q)
    sub = np.array(gf.sub, dtype=np.int64)
    total = sp.size
    dims = sp.total_dim
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((total, dims), dtype=np.int64)
    rest = idx.copy()
    for pos in range(dims - 1, -1, -1):
        digits[:, pos] = rest % sp.q
        rest //= sp.q
    return digits, sub


def build_graph(sp: SpaceParams, k: int, cap: Optional[int] = None) -> ExplicitGraph:
    """Adjacency of the k-th distance power: edge iff 1 <= srk(x-y) <= k."""
    cap = vertex_cap() if cap is None else cap
    if sp.size > cap:
        raise ValueError(
            f"|V| = {sp.size} exceeds the vertex cap {cap} (set {_CAP_ENV} to raise)"
        )
    if not (1 <= k <= sp.N):
        raise ValueError(f"need 1 <= k <= N = {sp.N}, got k = {k}")
    weights = weight_table(sp)
    total = sp.size
    digits, sub = _digit_matrix(sp)
    dims = sp.total_dim
    radix = np.array([sp.q ** (dims - 1 - j) for j in range(dims)], dtype=np.int64)

    shifts = np.flatnonzero((weights >= 1) & (weights <= k))
    bool_adj = np.zeros((total, total), dtype=bool)
    xs = np.arange(total, dtype=np.int64)
    for z in shifts:
        zdig = digits[z]
        sdig = sub[digits, zdig[None, :]]  # (x - z) digitwise
        target = sdig @ radix
        bool_adj[target, xs] = True  # x adjacent to x - z

    rows = []
    for i in range(total):
        packed = np.packbits(bool_adj[i], bitorder="little").tobytes()
        rows.append(int.from_bytes(packed, "little"))
    g = ExplicitGraph(sp=sp, power=k, weight_table=weights, rows=rows)
    deg0 = g.rows[0].bit_count()
    if any(r.bit_count() != deg0 for r in g.rows):
        raise AssertionError("graph is not regular; construction bug")
    if any((g.rows[i] >> i) & 1 for i in range(total)):
        raise AssertionError("self-loop produced; construction bug")
    return g


@dataclass
class IndependenceResult:
    """Exact value when ``exact``, else a certified enclosure [lower, upper].

    ``witness`` is an independent set of size ``lower`` (vertex ids), so the
    lower bound is always constructive.
    """

    lower: int
    upper: int
    nodes: int
    elapsed: float
    witness: Tuple[int, ...] = ()

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only an interval [{self.lower}, {self.upper}] is known")
        return self.lower


def _greedy_clique_cover(cand: int, rows: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Greedy clique cover of the candidate set.

    Each class is a clique, so an independent set contains at most one vertex
    per class; a vertex in class c together with all earlier vertices can
    contribute at most c to an independent set — the standard pruning bound.
    Returns candidate vertices in cover order with their class numbers.
    """
    order: List[int] = []
    classes: List[int] = []
    cls = 0
    remaining = cand
    while remaining:
        cls += 1
        avail = remaining
        while avail:
            v = (avail & -avail).bit_length() - 1
            order.append(v)
            classes.append(cls)
            bit = 1 << v
            remaining &= ~bit
            avail &= ~bit
            avail &= rows[v]  # stay inside the common neighbourhood: a clique
    return order, classes


def independence_number(
    g: ExplicitGraph, time_budget: Optional[float] = None, symmetry: bool = True
) -> IndependenceResult:
    """Exact (d-1)-independence number by branch and bound.

    Works directly with the conflict rows of the power graph: an independent
    set is a set with no two vertices adjacent.  Covering candidates by
    cliques greedily yields the standard upper bound (at most one vertex per
    clique).  By translation invariance an optimum set may be assumed to
    contain vertex 0, so the search starts from its non-neighbours; with
    ``symmetry`` the second vertex is additionally branched only over orbit
    representatives of the stabilizer of 0 (an optimum set of size >= 2 can
    be mapped to contain 0 and any chosen representative).
    """
    rows = g.rows
    n = g.num_vertices
    start = time.monotonic()
    deadline = None if time_budget is None else start + time_budget
    nodes = 0
    best = 1  # vertex 0 alone
    best_set: Tuple[int, ...] = (0,)
    best_known_upper = n
    timed_out = False

    full = (1 << n) - 1
    root_cand = full & ~rows[0] & ~1  # non-neighbours of vertex 0, excluding 0
    chosen: List[int] = [0]

    def expand(cand: int, size: int) -> None:
        nonlocal best, best_set, nodes, timed_out
        nodes += 1
        if deadline is not None and time.monotonic() > deadline:
            timed_out = True
            return
        if cand == 0:
            if size > best:
                best = size
                best_set = tuple(chosen)
            return
        order, colours = _greedy_clique_cover(cand, rows)
        for i in range(len(order) - 1, -1, -1):
            if timed_out:
                return
            if size + colours[i] <= best:
                return
            v = order[i]
            bit = 1 << v
            cand &= ~bit
            chosen.append(v)
            expand(cand & ~rows[v], size + 1)
            chosen.pop()
        return

    if symmetry and root_cand:
        invariants = _orbit_invariants(g.sp)
        seen: Dict[tuple, int] = {}
        rem = root_cand
        while rem:
            bit = rem & -rem
            v = bit.bit_length() - 1
            rem &= ~bit
            seen.setdefault(invariants[v], v)
        for v in seen.values():
            if timed_out:
                break
            chosen.append(v)
            expand(root_cand & ~rows[v] & ~(1 << v), 2)
            chosen.pop()
    else:
        expand(root_cand, 1)
    elapsed = time.monotonic() - start
    if timed_out:
        # greedy colouring of the whole graph still certifies an upper bound
        _, colours = _greedy_clique_cover(full, rows)
        best_known_upper = max(colours)
        return IndependenceResult(
            best, max(best, best_known_upper), nodes, elapsed, best_set
        )
    return IndependenceResult(best, best, nodes, elapsed, best_set)


def adjacency_spectrum_check(g: ExplicitGraph, spec: Spectrum, tol: float = 1e-6) -> bool:
    """Do the float eigenvalues of g match the exact spectrum?

    Eigenvalues are grouped within ``tol``; both the grouped values and the
    multiplicities must agree with ``spec`` exactly.
    """
    n = g.num_vertices
    if n > 1024:
        raise ValueError("adjacency_spectrum_check limited to 1024 vertices")
    mat = g.adjacency_array().astype(np.float64)
    eigs = np.linalg.eigvalsh(mat)[::-1]
    groups: List[Tuple[float, int]] = []
    for e in eigs:
        if groups and abs(groups[-1][0] - e) <= 1e-5:
            groups[-1] = (groups[-1][0], groups[-1][1] + 1)
        else:
            groups.append((float(e), 1))
    if len(groups) != len(spec.eigenvalues):
        return False
    for (ev, mult), (tv, tm) in zip(groups, spec.items()):
        if abs(ev - tv) > tol or mult != tm:
            return False
    return True


def graph_spectrum_of_power(sp: SpaceParams, k: int) -> Spectrum:
    """Exact spectrum of the k-th power via the scheme eigenmatrix.

    The power graph's adjacency is the sum of the first k distance classes,
    so its eigenvalues are partial row sums of the scheme eigenmatrix.
    """
    from .delsarte import scheme_eigenmatrix, index_tuples

    mat = scheme_eigenmatrix(sp)
    spec = sum_rank_spectrum(sp)
    tuples = list(index_tuples(sp))
    weights = [sum(tup) for tup in tuples]
    # row u of the eigenmatrix corresponds to an eigenspace; its eigenvalue
    # on the power graph is the sum of columns with weight 1..k
    accum: Dict[int, int] = {}
    mults = _eigenspace_multiplicities(sp)
    for u in range(len(tuples)):
        val = sum(mat[u][v] for v in range(len(tuples)) if 1 <= weights[v] <= k)
        accum[val] = accum.get(val, 0) + mults[u]
    eigs = sorted(accum, reverse=True)
    return Spectrum(tuple(eigs), tuple(accum[e] for e in eigs))


def _eigenspace_multiplicities(sp: SpaceParams) -> List[int]:
    """Multiplicity of each eigenspace, in tuple-lex order (self-dual scheme:
    eigenspace multiplicities equal the relation valencies)."""
    from .delsarte import block_eigenmatrix, index_tuples

    mats = [block_eigenmatrix(sp.q, n_i, m_i) for n_i, m_i in zip(sp.n, sp.m)]
    out = []
    for tup in index_tuples(sp):
        m = 1
        for i, u in enumerate(tup):
            m *= mats[i][0][u]
        out.append(m)
    return out
