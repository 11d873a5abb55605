"""Command-line front end.

Subcommands
-----------
bound
    Compute any subset of the implemented upper bounds for one space.
replay
    Recompute a bundled reference table and diff it cell by cell.
spectrum
    Exact eigenvalues and multiplicities of a sum-rank graph power.
brute
    Exhaustive branch-and-bound (currently: independence number).
analyze
    Non-existence verdicts (msrd / perfect / additive-perfect / rt-vs-sp).

Conventions shared by all subcommands: ``--n 3,2`` comma syntax for block
lists (blocks are sorted largest-first to the standing convention unless
``--no-reorder`` is given), ``--format text|json|csv``, exit code 0 on
success, 2 on invalid parameters, 3 on solver failure (partial results are
still printed).  The environment variable ``SRKB_CAP_VERTICES`` overrides
the built-in vertex caps; an explicit ``--cap`` beats both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .classical import ALL_CLASSICAL, BoundMethod
from .delsarte import delsarte_lp, theta_lp
from .existence import (
    RtSpComparison,
    Verdict,
    additive_perfect_congruence,
    msrd_verdict,
    perfect_verdict,
    rt_vs_sp_report,
)
from .graphs import DEFAULT_VERTEX_CAP, build_graph, graph_spectrum_of_power, independence_number
from .ratio import ratio_type_bound
from .sdp import schrijver_sdp
from .space import SpaceParams
from .tables import ReplayCaps, replay_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3

CLASSICAL_METHOD_NAMES: Tuple[str, ...] = tuple(m.value for m in ALL_CLASSICAL)
#: the ten columns of the large comparison table, i.e. what ``--method all`` means
TABLE_METHOD_NAMES: Tuple[str, ...] = ("ratio-type", "delsarte-lp") + CLASSICAL_METHOD_NAMES
BOUND_METHOD_NAMES: Tuple[str, ...] = TABLE_METHOD_NAMES + ("lovasz-theta", "schrijver-sdp")

_METHOD_ALIASES = {
    "rt": "ratio-type",
    "dlp": "delsarte-lp",
    "lp": "delsarte-lp",
    "theta": "lovasz-theta",
    "sdp": "schrijver-sdp",
}


def _parse_blocks(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}")


def _space_from_args(args: argparse.Namespace) -> SpaceParams:
    n = _parse_blocks(args.n)
    m = _parse_blocks(args.m)
    if args.no_reorder:
        return SpaceParams(args.q, n, m)
    return SpaceParams.normalized(args.q, n, m)


def _parse_methods(text: str) -> Tuple[str, ...]:
    wanted: List[str] = []
    for raw in text.split(","):
        name = raw.strip().lower()
        if not name:
            continue
        if name == "all":
            wanted.extend(TABLE_METHOD_NAMES)
            continue
        name = _METHOD_ALIASES.get(name, name)
        if name not in BOUND_METHOD_NAMES:
            raise ValueError(
                f"unknown method {raw!r}; choose from all, "
                + ", ".join(sorted(BOUND_METHOD_NAMES + tuple(_METHOD_ALIASES)))
            )
        wanted.append(name)
    if not wanted:
        raise ValueError("no methods requested")
    # deterministic output ordering by method name
    return tuple(sorted(set(wanted)))


def _effective_cap(explicit: Optional[int], fallback: int) -> int:
    """--cap beats SRKB_CAP_VERTICES beats the built-in default."""
    if explicit is not None:
        return explicit
    env = os.environ.get("SRKB_CAP_VERTICES")
    if env is not None:
        return int(env)
    return fallback


def _parse_row_filter(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    rows: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            rows.extend(range(int(lo), int(hi) + 1))
        else:
            rows.append(int(part))
    if not rows:
        raise ValueError("empty row filter")
    return rows


# ---------------------------------------------------------------------------
# bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MethodOutcome:
    """One method's result: ok / not-applicable / failed plus values."""

    method: str
    status: str
    value: Optional[int]
    exact: Optional[str]
    detail: str = ""

    def line(self) -> str:
        if self.status == "ok":
            msg = f"{self.method}: {self.value}"
            extra = []
            if self.exact is not None and "/" in self.exact:
                extra.append(f"exact {self.exact}")
            if self.detail:
                extra.append(self.detail)
            return msg + (f" ({'; '.join(extra)})" if extra else "")
        if self.status == "not-applicable":
            return f"{self.method}: not applicable ({self.detail})"
        return f"{self.method}: FAILED ({self.detail})"


@dataclass(frozen=True)
class BoundRun:
    q: int
    n: Tuple[int, ...]
    m: Tuple[int, ...]
    d: int
    outcomes: Tuple[MethodOutcome, ...]

    def to_json(self) -> str:
        doc = {
            "space": {"q": self.q, "n": list(self.n), "m": list(self.m)},
            "d": self.d,
            "results": [
                {
                    "method": o.method,
                    "status": o.status,
                    "value": o.value,
                    "exact": o.exact,
                    "detail": o.detail,
                }
                for o in self.outcomes
            ],
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "BoundRun":
        doc = json.loads(text)
        return BoundRun(
            q=doc["space"]["q"],
            n=tuple(doc["space"]["n"]),
            m=tuple(doc["space"]["m"]),
            d=doc["d"],
            outcomes=tuple(MethodOutcome(**r) for r in doc["results"]),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["method", "status", "value", "exact", "detail"])
        for o in self.outcomes:
            w.writerow([o.method, o.status,
                        "" if o.value is None else o.value,
                        "" if o.exact is None else o.exact, o.detail])
        return buf.getvalue()

    def to_text(self) -> str:
        head = f"q={self.q} n=({','.join(map(str, self.n))}) m=({','.join(map(str, self.m))}) d={self.d}"
        return "\n".join([head] + [o.line() for o in self.outcomes]) + "\n"


def _bound_one(
    name: str,
    sp: SpaceParams,
    d: int,
    cap: int,
    tol: float,
    budget: Optional[float],
    certificates: Dict[str, dict],
) -> MethodOutcome:
    if d == 1:
        return MethodOutcome(
            name, "ok", sp.size, str(sp.size),
            "trivial: the whole space is a code at distance 1",
        )
    if name in CLASSICAL_METHOD_NAMES:
        try:
            res = ALL_CLASSICAL[BoundMethod(name)](sp, d)
        except ValueError as exc:
            return MethodOutcome(name, "not-applicable", None, None, str(exc))
        if not res.applicable:
            return MethodOutcome(name, "not-applicable", None, None, res.detail)
        return MethodOutcome(name, "ok", res.value_int, str(res.value_exact), res.detail)
    if name == "ratio-type":
        v = ratio_type_bound(sp, d)
        return MethodOutcome(name, "ok", v.numerator // v.denominator, str(v))
    if name == "delsarte-lp":
        r = delsarte_lp(sp, d)
        certificates[name] = r.as_certificate()
        return MethodOutcome(name, "ok", r.floor, str(r.value))
    if name == "lovasz-theta":
        r = theta_lp(sp, d - 1)
        certificates[name] = r.as_certificate()
        return MethodOutcome(name, "ok", r.floor, str(r.value),
                             f"theta of the distance-(<={d - 1}) graph")
    if name == "schrijver-sdp":
        if sp.size > cap:
            return MethodOutcome(
                name, "failed", None, None,
                f"|V| = {sp.size} exceeds cap {cap}; raise --cap or SRKB_CAP_VERTICES",
            )
        sol = schrijver_sdp(sp, d, tol=tol, cap=cap, time_budget=budget)
        certificates[name] = {
            "certified_upper_bound": sol.certified_upper_bound,
            "iterations": sol.iterations,
            "residual": sol.residual,
            "dim": sol.dim,
        }
        exact = None if sol.exact_value is None else str(sol.exact_value)
        return MethodOutcome(name, "ok", sol.floor, exact,
                             f"certified upper bound {sol.certified_upper_bound:.6f}")
    raise ValueError(f"unknown method {name!r}")


def cmd_bound(args: argparse.Namespace) -> int:
    sp = _space_from_args(args)
    if not (1 <= args.d <= sp.N):
        raise ValueError(f"need 1 <= d <= N = {sp.N}, got d = {args.d}")
    methods = _parse_methods(args.method)
    cap = _effective_cap(args.cap, 1024)
    certificates: Dict[str, dict] = {}
    outcomes = tuple(
        _bound_one(name, sp, args.d, cap, args.tol, args.budget, certificates)
        for name in methods
    )
    run = BoundRun(sp.q, sp.n, sp.m, args.d, outcomes)
    _emit(args, run)
    if args.emit_certificate:
        with open(args.emit_certificate, "w") as f:
            json.dump(certificates, f, sort_keys=True, indent=2)
            f.write("\n")
    return EXIT_SOLVER if any(o.status == "failed" for o in outcomes) else EXIT_OK


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------

def cmd_replay(args: argparse.Namespace) -> int:
    rows = _parse_row_filter(args.rows)
    columns = None
    if args.columns is not None:
        columns = [c.strip() for c in args.columns.split(",") if c.strip()]
        columns = [_METHOD_ALIASES.get(c, c) for c in columns]
        columns = ["rt" if c == "ratio-type" else "dlp" if c == "delsarte-lp" else c
                   for c in columns]
    caps = ReplayCaps(
        alpha_cap=_effective_cap(args.alpha_cap, ReplayCaps.alpha_cap),
        alpha_budget=args.alpha_budget,
        sdp_cap=_effective_cap(args.sdp_cap, ReplayCaps.sdp_cap),
        sdp_budget=args.sdp_budget,
        sdp_iters=args.sdp_iters,
    )
    report = replay_table(args.table, rows=rows, columns=columns, caps=caps,
                          jobs=args.jobs)
    _emit(args, report)
    return report.exit_code


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumRun:
    q: int
    n: Tuple[int, ...]
    m: Tuple[int, ...]
    power: int
    pairs: Tuple[Tuple[int, int], ...]  # (eigenvalue, multiplicity), descending

    def to_json(self) -> str:
        doc = {
            "space": {"q": self.q, "n": list(self.n), "m": list(self.m)},
            "power": self.power,
            "pairs": [list(p) for p in self.pairs],
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "SpectrumRun":
        doc = json.loads(text)
        return SpectrumRun(
            q=doc["space"]["q"],
            n=tuple(doc["space"]["n"]),
            m=tuple(doc["space"]["m"]),
            power=doc["power"],
            pairs=tuple((p[0], p[1]) for p in doc["pairs"]),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eigenvalue", "multiplicity"])
        for ev, mult in self.pairs:
            w.writerow([ev, mult])
        return buf.getvalue()

    def to_text(self) -> str:
        return "\n".join(f"{ev} {mult}" for ev, mult in self.pairs) + "\n"


def cmd_spectrum(args: argparse.Namespace) -> int:
    sp = _space_from_args(args)
    if not (1 <= args.power <= sp.N):
        raise ValueError(f"need 1 <= power <= N = {sp.N}, got {args.power}")
    spec = graph_spectrum_of_power(sp, args.power)
    run = SpectrumRun(sp.q, sp.n, sp.m, args.power, tuple(spec.items()))
    _emit(args, run)
    return EXIT_OK


# ---------------------------------------------------------------------------
# brute
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BruteRun:
    target: str
    q: int
    n: Tuple[int, ...]
    m: Tuple[int, ...]
    d: int
    lower: int
    upper: int
    nodes: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> str:
        doc = {
            "target": self.target,
            "space": {"q": self.q, "n": list(self.n), "m": list(self.m)},
            "d": self.d,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "exact": self.exact,
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "BruteRun":
        doc = json.loads(text)
        return BruteRun(
            target=doc["target"],
            q=doc["space"]["q"],
            n=tuple(doc["space"]["n"]),
            m=tuple(doc["space"]["m"]),
            d=doc["d"],
            lower=doc["lower"],
            upper=doc["upper"],
            nodes=doc["nodes"],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["target", "lower", "upper", "exact", "nodes"])
        w.writerow([self.target, self.lower, self.upper, self.exact, self.nodes])
        return buf.getvalue()

    def to_text(self) -> str:
        if self.exact:
            return f"{self.target} = {self.lower}\n"
        return f"{self.target} in [{self.lower}, {self.upper}] (budget exhausted)\n"


def cmd_brute(args: argparse.Namespace) -> int:
    sp = _space_from_args(args)
    if not (1 <= args.d <= sp.N):
        raise ValueError(f"need 1 <= d <= N = {sp.N}, got d = {args.d}")
    cap = _effective_cap(args.cap, DEFAULT_VERTEX_CAP)
    g = build_graph(sp, args.d - 1, cap=cap)
    if args.dimacs:
        with open(args.dimacs, "w") as f:
            f.write(g.to_dimacs())
    res = independence_number(g, time_budget=args.budget)
    run = BruteRun("alpha", sp.q, sp.n, sp.m, args.d, res.lower, res.upper, res.nodes)
    _emit(args, run)
    return EXIT_OK if run.exact else EXIT_SOLVER


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnalyzeRun:
    q: int
    n: Tuple[int, ...]
    m: Tuple[int, ...]
    d: int
    doc_kind: str  # "verdict" | "rt-vs-sp"
    payload: dict

    def to_json(self) -> str:
        doc = {
            "space": {"q": self.q, "n": list(self.n), "m": list(self.m)},
            "d": self.d,
            "kind": self.doc_kind,
            "result": self.payload,
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "AnalyzeRun":
        doc = json.loads(text)
        return AnalyzeRun(
            q=doc["space"]["q"],
            n=tuple(doc["space"]["n"]),
            m=tuple(doc["space"]["m"]),
            d=doc["d"],
            doc_kind=doc["kind"],
            payload=doc["result"],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        keys = sorted(self.payload)
        w.writerow(keys)
        w.writerow([json.dumps(self.payload[k]) if isinstance(self.payload[k], dict)
                    else self.payload[k] for k in keys])
        return buf.getvalue()

    def to_text(self) -> str:
        if self.doc_kind == "verdict":
            v = Verdict.from_doc(self.payload)
            lines = [v.exists.value, f"criterion: {v.criterion}"]
            if v.witness is not None:
                w = v.witness
                lines.append(f"witness: {w.bound} {w.relation} {w.target_size}")
            if v.detail:
                lines.append(f"detail: {v.detail}")
            return "\n".join(lines) + "\n"
        c = RtSpComparison.from_doc(self.payload)
        return (
            f"spectral = {c.rt_value}, packing = {c.sp_value}, "
            f"strict = {c.strict}, modular condition = {c.modular_condition}, "
            f"family = {c.family}\n"
        )


def cmd_analyze(args: argparse.Namespace) -> int:
    sp = _space_from_args(args)
    if not (1 <= args.d <= sp.N):
        raise ValueError(f"need 1 <= d <= N = {sp.N}, got d = {args.d}")
    if args.target == "msrd":
        payload = msrd_verdict(sp, args.d).to_doc()
        kind = "verdict"
    elif args.target == "perfect":
        payload = perfect_verdict(sp, args.d).to_doc()
        kind = "verdict"
    elif args.target == "additive-perfect":
        payload = additive_perfect_congruence(sp, args.d).to_doc()
        kind = "verdict"
    else:  # rt-vs-sp
        payload = rt_vs_sp_report(sp, args.d).to_doc()
        kind = "rt-vs-sp"
    run = AnalyzeRun(sp.q, sp.n, sp.m, args.d, kind, payload)
    _emit(args, run)
    return EXIT_OK


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _emit(args: argparse.Namespace, obj) -> None:
    if args.format == "json":
        sys.stdout.write(obj.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(obj.to_csv())
    else:
        sys.stdout.write(obj.to_text())


def _add_space_args(p: argparse.ArgumentParser, with_d: bool = True) -> None:
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--n", type=str, required=True,
                   help="block lengths, e.g. 3,2")
    p.add_argument("--m", type=str, required=True,
                   help="block widths, e.g. 3,2")
    if with_d:
        p.add_argument("--d", type=int, required=True, help="minimum distance")
    p.add_argument("--no-reorder", action="store_true",
                   help="take blocks exactly as given instead of sorting largest-first")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srkb",
        description="Certified upper bounds for sum-rank-metric codes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("bound", help="compute upper bounds for one space")
    _add_space_args(p)
    p.add_argument("--method", default="all",
                   help="comma list: all, rt, dlp, theta, sdp, or any bound name")
    p.add_argument("--cap", type=int, default=None,
                   help="max |V| for the SDP (default 1024)")
    p.add_argument("--tol", type=float, default=1e-9, help="SDP stopping tolerance")
    p.add_argument("--budget", type=float, default=None,
                   help="SDP time budget in seconds")
    p.add_argument("--emit-certificate", metavar="PATH",
                   help="write LP/SDP certificates as JSON to PATH")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("replay", help="recompute a bundled reference table")
    p.add_argument("--table", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--rows", type=str, default=None,
                   help="row filter, e.g. 1,4,7-9 (default: all rows)")
    p.add_argument("--columns", type=str, default=None,
                   help="column filter, e.g. rt,dlp (default: all columns)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--alpha-cap", type=int, default=None,
                   help=f"max |V| for independence cells (default {ReplayCaps.alpha_cap})")
    p.add_argument("--alpha-budget", type=float, default=ReplayCaps.alpha_budget)
    p.add_argument("--sdp-cap", type=int, default=None,
                   help=f"max |V| for SDP cells (default {ReplayCaps.sdp_cap})")
    p.add_argument("--sdp-budget", type=float, default=ReplayCaps.sdp_budget)
    p.add_argument("--sdp-iters", type=int, default=ReplayCaps.sdp_iters)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("spectrum", help="exact spectrum of a graph power")
    _add_space_args(p, with_d=False)
    p.add_argument("--power", type=int, default=1,
                   help="distance threshold k of the power graph (default 1)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("brute", help="exhaustive search")
    p.add_argument("target", choices=("alpha",),
                   help="what to search for (alpha: independence number)")
    _add_space_args(p)
    p.add_argument("--cap", type=int, default=None,
                   help=f"max |V| for the explicit graph (default {DEFAULT_VERTEX_CAP})")
    p.add_argument("--budget", type=float, default=None,
                   help="time budget in seconds (absent: run to completion)")
    p.add_argument("--dimacs", metavar="PATH",
                   help="also write the conflict graph in DIMACS edge format")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("analyze", help="non-existence verdicts")
    p.add_argument("target", choices=("msrd", "perfect", "additive-perfect", "rt-vs-sp"))
    _add_space_args(p)
    p.set_defaults(func=cmd_analyze)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
