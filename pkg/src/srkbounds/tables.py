"""Replay harness: recompute bundled reference tables and diff cell by cell.

Three CSV assets ship with the package (``data/table{1,2,3}.csv``), each row
tagged with its provenance (table id, row number):

* table 1 — Hamming spaces (all blocks 1x1) where the association-scheme LP
  and the spectral ratio bound agree but beat the Singleton bound;
* table 2 — small sum-rank spaces with clique/independence, theta, ratio,
  scheme-LP and three-point-SDP columns (``time`` marks cells the reference
  computation never finished);
* table 3 — larger spaces comparing the ratio and scheme-LP bounds against
  the eight classical bounds (a printed 0 means "not applicable").

:func:`replay_table` recomputes every selected cell within resource caps and
reports pass/fail per cell.  Reports are deterministic: cells are emitted in
(row, column) order and contain no timing data, so two runs with the same
caps produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from importlib import resources
from typing import Dict, Iterable, List, Optional, Tuple

from .classical import ALL_CLASSICAL, BoundMethod
from .delsarte import delsarte_lp, theta_lp
from .graphs import build_graph, independence_number
from .ratio import ratio_type_bound
from .sdp import schrijver_sdp
from .space import SpaceParams

TABLE_IDS = (1, 2, 3)

CLASSICAL_COLUMNS: Tuple[str, ...] = (
    "induced-singleton",
    "induced-hamming",
    "induced-plotkin",
    "induced-elias",
    "singleton",
    "sphere-packing",
    "projective-sphere-packing",
    "total-distance",
)
ALL_CLASSICAL_NAMES = frozenset(CLASSICAL_COLUMNS)

#: column order of the replay report for each table
TABLE_COLUMNS: Dict[int, Tuple[str, ...]] = {
    1: ("rt", "dlp", "singleton"),
    2: ("alpha", "theta", "rt", "dlp", "sdp"),
    3: ("rt", "dlp") + CLASSICAL_COLUMNS,
}

#: columns whose ``time`` cells are skipped rather than recomputed
SKIP_WHEN_UNTIMED = frozenset({"alpha", "theta"})


@dataclass(frozen=True)
class TableRow:
    """One reference row: the space, the distance, and the printed cells."""

    table: int
    row: int
    sp: SpaceParams
    d: int
    expected: Tuple[Tuple[str, Optional[int]], ...]  # None encodes ``time``

    @property
    def expected_map(self) -> Dict[str, Optional[int]]:
        return dict(self.expected)


def _parse_blocks(text: str) -> Tuple[int, ...]:
    return tuple(int(x) for x in text.split(";"))


def _read_asset(name: str) -> List[Dict[str, str]]:
    data = resources.files(__package__).joinpath("data", name).read_text()
    return list(csv.DictReader(io.StringIO(data)))


def load_table(table_id: int) -> Tuple[TableRow, ...]:
    """Parse a bundled reference table into :class:`TableRow` records."""
    if table_id not in TABLE_IDS:
        raise ValueError(f"table_id must be one of {TABLE_IDS}, got {table_id}")
    rows: List[TableRow] = []
    for rec in _read_asset(f"table{table_id}.csv"):
        t, q, d = int(rec["t"]), int(rec["q"]), int(rec["d"])
        if table_id == 1:
            sp = SpaceParams(q, (1,) * t, (1,) * t)
            val = int(rec["dlp_rt"])
            expected = (("rt", val), ("dlp", val), ("singleton", int(rec["singleton"])))
        else:
            sp = SpaceParams(q, _parse_blocks(rec["n"]), _parse_blocks(rec["m"]))
            if int(rec["size"]) != sp.size:
                raise ValueError(f"table {table_id} row {rec['row']}: size column mismatch")
            cells = []
            for col in TABLE_COLUMNS[table_id]:
                raw = rec[col.replace("-", "_")]
                cells.append((col, None if raw == "time" else int(raw)))
            expected = tuple(cells)
        rows.append(TableRow(table_id, int(rec["row"]), sp, d, expected))
    out = tuple(rows)
    if [r.row for r in out] != list(range(1, len(out) + 1)):
        raise ValueError(f"table {table_id}: row numbers must be 1..{len(out)}")
    return out


# ---------------------------------------------------------------------------
# Cell recomputation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReplayCaps:
    """Resource caps for a replay run.

    Cells whose space exceeds the relevant cap are skipped (status ``skip``);
    cells whose computation exhausts its budget without an exact answer are
    reported ``unresolved``.  Neither state is a mismatch.
    """

    alpha_cap: int = 512  # max |V| for exact independence-number cells
    alpha_budget: float = 300.0  # seconds per independence cell (worst row
    # needs ~40 s alone; concurrent SDP workers can slow it several-fold)
    theta_cap: int = 1 << 20  # theta is an exact LP over the scheme: cheap
    sdp_cap: int = 512  # max |V| for three-point SDP cells
    sdp_budget: float = 600.0  # seconds per SDP cell
    sdp_iters: int = 20000


def _compute_cell(row: TableRow, column: str, caps: ReplayCaps):
    """Recompute one cell; returns (value or None, detail)."""
    sp, d = row.sp, row.d
    if column in ALL_CLASSICAL_NAMES:
        res = ALL_CLASSICAL[BoundMethod(column)](sp, d)
        return res.table_value, res.detail
    if column == "rt":
        v = ratio_type_bound(sp, d)
        return v.numerator // v.denominator, f"exact value {v}"
    if column == "dlp":
        r = delsarte_lp(sp, d)
        return r.floor, f"exact value {r.value}"
    if column == "theta":
        if sp.size > caps.theta_cap:
            return None, f"|V| = {sp.size} exceeds theta cap {caps.theta_cap}"
        r = theta_lp(sp, d - 1)
        return r.floor, f"exact value {r.value}"
    if column == "alpha":
        if sp.size > caps.alpha_cap:
            return None, f"|V| = {sp.size} exceeds independence cap {caps.alpha_cap}"
        g = build_graph(sp, d - 1, cap=sp.size)
        res = independence_number(g, time_budget=caps.alpha_budget)
        if res.exact:
            return res.value, f"search closed after {res.nodes} nodes"
        return None, f"budget exhausted at interval [{res.lower}, {res.upper}]"
    if column == "sdp":
        if sp.size > caps.sdp_cap:
            return None, f"|V| = {sp.size} exceeds SDP cap {caps.sdp_cap}"
        sol = schrijver_sdp(
            sp, d, max_iter=caps.sdp_iters, time_budget=caps.sdp_budget, cap=sp.size
        )
        return sol.floor, f"certified upper bound {sol.certified_upper_bound:.6f}"
    raise ValueError(f"unknown column {column!r}")


@dataclass(frozen=True)
class CellReport:
    """Outcome of one replayed cell.

    status is one of ``pass`` / ``fail`` (computed vs printed), ``skip``
    (not computed: ``time`` cell or above cap), ``info`` (computed, but the
    reference printed ``time`` so there is nothing to diff), ``unresolved``
    (attempted, budget ran out before an exact answer).
    """

    table: int
    row: int
    column: str
    expected: Optional[int]
    computed: Optional[int]
    status: str
    detail: str = ""

    def line(self) -> str:
        exp = "time" if self.expected is None else str(self.expected)
        comp = "-" if self.computed is None else str(self.computed)
        msg = f"table {self.table} row {self.row} {self.column}: {self.status}"
        msg += f" expected={exp} computed={comp}"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


@dataclass(frozen=True)
class ReplayReport:
    table: int
    caps: ReplayCaps
    cells: Tuple[CellReport, ...]

    def count(self, status: str) -> int:
        return sum(1 for c in self.cells if c.status == status)

    @property
    def failures(self) -> Tuple[CellReport, ...]:
        return tuple(c for c in self.cells if c.status == "fail")

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def summary(self) -> str:
        parts = [f"{self.count(s)} {s}" for s in ("pass", "fail", "skip", "info", "unresolved")]
        return f"table {self.table}: " + ", ".join(parts)

    def to_text(self) -> str:
        lines = [c.line() for c in self.cells]
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "table": self.table,
            "caps": asdict(self.caps),
            "cells": [asdict(c) for c in self.cells],
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ReplayReport":
        doc = json.loads(text)
        return ReplayReport(
            table=doc["table"],
            caps=ReplayCaps(**doc["caps"]),
            cells=tuple(CellReport(**c) for c in doc["cells"]),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "row", "column", "expected", "computed", "status", "detail"])
        for c in self.cells:
            w.writerow([
                c.table, c.row, c.column,
                "time" if c.expected is None else c.expected,
                "" if c.computed is None else c.computed,
                c.status, c.detail,
            ])
        return buf.getvalue()


def _replay_one(args) -> CellReport:
    row, column, caps = args
    expected = row.expected_map[column]
    if expected is None and column in SKIP_WHEN_UNTIMED:
        return CellReport(row.table, row.row, column, None, None, "skip",
                          "reference cell is `time`")
    computed, detail = _compute_cell(row, column, caps)
    if computed is None:
        status = "skip" if "exceeds" in detail else "unresolved"
    elif expected is None:
        status = "info"
    else:
        status = "pass" if computed == expected else "fail"
    return CellReport(row.table, row.row, column, expected, computed, status, detail)


def replay_table(
    table_id: int,
    rows: Optional[Iterable[int]] = None,
    columns: Optional[Iterable[str]] = None,
    caps: ReplayCaps = ReplayCaps(),
    jobs: int = 1,
) -> ReplayReport:
    """Recompute the selected cells of one bundled table and diff them.

    ``rows`` filters by 1-based row number, ``columns`` by report column
    name.  With ``jobs > 1`` cells are recomputed by a process pool; output
    is buffered per cell and emitted in (row, column) order either way.
    """
    table = load_table(table_id)
    if rows is not None:
        want_rows = set(rows)
        unknown = want_rows - {r.row for r in table}
        if unknown:
            raise ValueError(f"table {table_id} has no rows {sorted(unknown)}")
    else:
        want_rows = None
    order = TABLE_COLUMNS[table_id]
    if columns is not None:
        want_cols = set(columns)
        unknown_cols = want_cols - set(order)
        if unknown_cols:
            raise ValueError(
                f"table {table_id} has no columns {sorted(unknown_cols)}; "
                f"choose from {list(order)}"
            )
    else:
        want_cols = None

    tasks = [
        (row, col, caps)
        for row in table
        if want_rows is None or row.row in want_rows
        for col in order
        if want_cols is None or col in want_cols
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = tuple(pool.map(_replay_one, tasks, chunksize=1))
    else:
        cells = tuple(_replay_one(t) for t in tasks)
    return ReplayReport(table=table_id, caps=caps, cells=cells)
