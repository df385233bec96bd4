"""
Command line front end.

Computes single quantities, prints triangles and runs the identity audit.
Exit status: 0 on success, 1 on invalid input, 2 when an audit reports FAIL.
"""

import argparse
import csv
import io
import json
import logging
import sys
import traceback
from dataclasses import replace
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from bellgraph import Graph, dual_path_audit, dual_path_graph, graph_bell, graph_stirling_row, graph_stirling_second
from config import Settings, load_settings
from deformation import Deformation, DeformationKind, fmt, make_custom_deformation, make_deformation, parse_rational
from errors import RPQError, UsageError
from identities import (
    CheckReport,
    Status,
    check_all,
    check_or_skip,
    default_grids,
    list_identities,
    lookup,
    summarize,
)
from moments import (
    DiscreteDistribution,
    binomial_moment_vector,
    classical_bridge_report,
    classical_moments_from_deformed,
    deformed_mean_variance,
    factorial_moment_vector,
    inversion_report,
)
from stirling import StirlingConfig, StirlingKind, signless_first, stirling, stirling_audit, stirling_triangle

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_AUDIT_FAIL = 2

TRIANGLE_KINDS = ("binomial", "stirling1", "stirling2", "graph")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad input."""

    def error(self, message):
        raise UsageError(message)


def _common_options(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deformation", default=settings.deformation,
                        choices=[kind.value for kind in DeformationKind],
                        help="deformation kind (default: %(default)s)")
    common.add_argument("--p", default=settings.p, help="first parameter, a rational literal (default: %(default)s)")
    common.add_argument("--q", default=settings.q, help="second parameter, a rational literal (default: %(default)s)")
    common.add_argument("--eps1", help="custom deformation: eps1")
    common.add_argument("--eps2", help="custom deformation: eps2")
    common.add_argument("--unit", default="1", help="custom deformation: unit (default: %(default)s)")
    common.add_argument("--format", default="table", choices=["table", "json", "csv"])
    common.add_argument("--out", help="write output to this file instead of standard output")
    common.add_argument("--verbose", action="store_true", help="debug logging on standard error")
    return common


def build_parser(settings: Optional[Settings] = None) -> argparse.ArgumentParser:
    settings = settings or load_settings()
    common = _common_options(settings)
    parser = _Parser(prog="rpq", description="Exact deformed combinatorics: numbers, triangles and identity audits.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("number", parents=[common], help="deformed number [n]")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("factorial", parents=[common], help="[n]! or, with --k, the ordered factorial [n]_k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)

    p = sub.add_parser("binomial", parents=[common], help="deformed binomial [n over k]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("triangle", parents=[common], help="rows 0..n of a triangle")
    p.add_argument("--kind", choices=TRIANGLE_KINDS, default="binomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--tau", type=int, default=0)
    p.add_argument("--graph", help="graph JSON file (graph triangles; dual path graphs otherwise)")

    p = sub.add_parser("stirling", parents=[common], help="noncentral Stirling number")
    p.add_argument("--kind", choices=[kind.value for kind in StirlingKind], default="first")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--tau", type=int, default=0)
    p.add_argument("--signless", action="store_true")

    p = sub.add_parser("bell", parents=[common], help="graph Stirling or Bell number")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--dual-path", type=int, dest="dual_path")
    source.add_argument("--graph")
    p.add_argument("--k", type=int, help="block count; the Bell number when omitted")

    p = sub.add_parser("moments", parents=[common], help="moments of a distribution file")
    p.add_argument("--dist", required=True, help='JSON file {"probs": {"0": "1/2", ...}}')
    p.add_argument("--j", type=int, help="also rebuild the classical moments of this order")
    p.add_argument("--tau", type=int, default=0)

    p = sub.add_parser("audit", parents=[common], help="run every identity and Stirling-level audit")
    p.add_argument("--only", help="restrict the run to one report token")
    p.add_argument("--no-timestamp", action="store_true", dest="no_timestamp")
    p.add_argument("--tolerance", type=float, default=settings.tolerance)
    p.add_argument("--horizon", type=int, default=settings.horizon)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--tau", type=int, default=0)
    p.add_argument("--n", type=int, default=6, help="size of the Stirling audits (default: %(default)s)")
    p.add_argument("--x", help="evaluation point, a rational literal: series samples, or x for integer-x identities")
    p.add_argument("--workers", type=int, default=1)

    sub.add_parser("list", parents=[common], help="list the identity registry")
    return parser


def build_deformation(args: argparse.Namespace) -> Deformation:
    if args.deformation == DeformationKind.CUSTOM.value:
        if args.eps1 is None or args.eps2 is None:
            raise UsageError("custom deformations need --eps1 and --eps2")
        return make_custom_deformation(args.eps1, args.eps2, args.unit)
    return make_deformation(args.deformation, args.p, args.q)


def _load_graph(args: argparse.Namespace) -> Graph:
    if args.graph:
        return Graph.load(args.graph)
    return dual_path_graph(args.dual_path)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _csv(rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def render_value(value: Fraction, fmt_name: str) -> str:
    text = fmt(value)
    if fmt_name == "json":
        return json.dumps({"value": text})
    if fmt_name == "csv":
        return _csv([["value"], [text]])
    return text


def render_mapping(payload: Dict[str, object], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(payload, indent=2)
    flat = [(key, value if isinstance(value, str) else json.dumps(value)) for key, value in payload.items()]
    if fmt_name == "csv":
        return _csv([["key", "value"], *flat])
    width = max(len(key) for key, _ in flat)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in flat)


def triangle_rows(kind: str, d: Deformation, n_max: int, j: int = 0, tau: int = 0,
                  graph: Optional[Graph] = None) -> List[List[Fraction]]:
    if n_max < 0:
        raise UsageError(f"triangle size must be nonnegative, got {n_max}")
    if kind == "binomial":
        return [[d.binomial(n, k) for k in range(n + 1)] for n in range(n_max + 1)]
    if kind in ("stirling1", "stirling2"):
        which = StirlingKind.FIRST if kind == "stirling1" else StirlingKind.SECOND
        return stirling_triangle(StirlingConfig(d, j, tau), which, n_max)
    if kind == "graph":
        if graph is not None:
            return [graph_stirling_row(d, graph)]
        return [graph_stirling_row(d, dual_path_graph(n)) for n in range(n_max + 1)]
    raise UsageError(f"unknown triangle kind {kind!r}")


def emit_triangle(kind: str, d: Deformation, n_max: int, j: int = 0, tau: int = 0,
                  fmt_name: str = "table", graph: Optional[Graph] = None) -> str:
    """Render rows 0..n_max as an aligned table, CSV with '# key=value' metadata, or JSON."""
    rows = [[fmt(v) for v in row] for row in triangle_rows(kind, d, n_max, j, tau, graph)]
    meta = {"kind": kind, "deformation": d.summary(), "j": j, "tau": tau}
    if fmt_name == "json":
        return json.dumps(dict(meta, rows=rows))
    if fmt_name == "csv":
        header = [f"# kind={kind}", f"# j={j}", f"# tau={tau}"]
        header += [f"# {key}={value}" for key, value in d.summary().items() if value is not None]
        return "\n".join(header) + "\n" + _csv(rows)
    width = max(len(cell) for row in rows for cell in row)
    return "\n".join(" ".join(cell.rjust(width) for cell in row) for row in rows)


def render_reports(reports: Sequence[CheckReport], summary: Dict[str, object], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n" + json.dumps(summary)
    rows = [[r.identity, r.status.value, str(r.cells), str(r.skipped)] for r in reports]
    if fmt_name == "csv":
        return _csv([["identity", "status", "cells", "skipped"], *rows]) + "\n" + json.dumps(summary)
    widths = [max(len(row[i]) for row in rows) for i in range(4)] if rows else [0] * 4
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    return "\n".join(lines + [json.dumps(summary)])


# ---------------------------------------------------------------------------
# Audit
# ---------------------------------------------------------------------------


def _moment_sample() -> DiscreteDistribution:
    return DiscreteDistribution({0: Fraction(1, 8), 1: Fraction(3, 8), 2: Fraction(1, 4), 3: Fraction(1, 4)})


def run_audit(d: Deformation, settings: Settings, only: Optional[str] = None, j: int = 0, tau: int = 0,
              n_max: int = 6, workers: int = 1, x: Optional[Fraction] = None) -> List[CheckReport]:
    """
    Registry identities first, then the Stirling, graph and moment audits.

    Args:
        only: a single report token; registry tokens skip the other audits
        x: evaluation point pinned into every registry grid that has one
    """
    grids = default_grids()
    if x is not None:
        grids = {token: grid.at_point(x) for token, grid in grids.items()}
    if only in grids:
        return [check_or_skip(only, d, grids[only], settings)]

    reports: List[CheckReport] = [] if only else check_all(d, grids, settings=settings, workers=workers)
    reports += stirling_audit(StirlingConfig(d, j, tau), n_max, settings)
    reports.append(dual_path_audit(d))
    sample = _moment_sample()
    reports.append(classical_bridge_report(d, sample, tau=tau))
    reports.append(inversion_report(d, sample))

    if only:
        reports = [r for r in reports if r.identity == only]
        if not reports:
            raise UsageError(f"unknown report token: {only}")
    return reports


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_number(args, d, settings) -> str:
    return render_value(d.number(args.n), args.format)


def _cmd_factorial(args, d, settings) -> str:
    value = d.factorial(args.n) if args.k is None else d.ordered_factorial(args.n, args.k)
    return render_value(value, args.format)


def _cmd_binomial(args, d, settings) -> str:
    return render_value(d.binomial(args.n, args.k), args.format)


def _cmd_triangle(args, d, settings) -> str:
    graph = Graph.load(args.graph) if args.graph else None
    return emit_triangle(args.kind, d, args.n, args.j, args.tau, args.format, graph)


def _cmd_stirling(args, d, settings) -> str:
    cfg = StirlingConfig(d, args.j, args.tau)
    if args.signless:
        if args.kind != StirlingKind.FIRST.value:
            raise UsageError("--signless applies to first-kind numbers only")
        return render_value(signless_first(cfg, args.n, args.k), args.format)
    return render_value(stirling(cfg, StirlingKind(args.kind), args.n, args.k), args.format)


def _cmd_bell(args, d, settings) -> str:
    graph = _load_graph(args)
    if args.k is None:
        return render_value(graph_bell(d, graph), args.format)
    return render_value(graph_stirling_second(d, graph, args.k), args.format)


def _cmd_moments(args, d, settings) -> str:
    try:
        dist = DiscreteDistribution.from_json(Path(args.dist).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read distribution from {args.dist}: {exc}") from exc
    mu, sigma2 = deformed_mean_variance(d, dist)
    payload: Dict[str, object] = {
        "mean": fmt(mu),
        "variance": fmt(sigma2),
        "factorial_moments": factorial_moment_vector(d, dist).to_dict()["order"],
        "binomial_moments": binomial_moment_vector(d, dist).to_dict()["order"],
    }
    if args.j is not None:
        binomial, falling = classical_moments_from_deformed(d, dist, args.j, args.tau, unit_corrected=True)
        payload["classical_binomial_moment"] = fmt(binomial)
        payload["classical_factorial_moment"] = fmt(falling)
    return render_mapping(payload, args.format)


def _cmd_list(args, d, settings) -> str:
    rows = [[token, mode.value, ref, lookup(token).label] for token, ref, mode in list_identities()]
    if args.format == "json":
        return json.dumps([{"identity": t, "mode": m, "paper_eq": r, "statement": s} for t, m, r, s in rows],
                          indent=2)
    if args.format == "csv":
        return _csv([["identity", "mode", "paper_eq", "statement"], *rows])
    width = max(len(row[0]) for row in rows)
    ref_width = max(len(row[2]) for row in rows)
    return "\n".join(f"{t.ljust(width)}  {m.ljust(7)}  {r.ljust(ref_width)}  {s}" for t, m, r, s in rows)


COMMANDS = {
    "number": _cmd_number,
    "factorial": _cmd_factorial,
    "binomial": _cmd_binomial,
    "triangle": _cmd_triangle,
    "stirling": _cmd_stirling,
    "bell": _cmd_bell,
    "moments": _cmd_moments,
    "list": _cmd_list,
}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and emit; returns the process exit status."""
    settings = load_settings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else settings.log_level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command is None:
        raise UsageError("a command is required; see --help")

    d = build_deformation(args)
    logger.debug("running %s under %s", args.command, d.summary())

    if args.command != "audit":
        _emit(COMMANDS[args.command](args, d, settings), args.out)
        return EXIT_OK

    settings = replace(settings, tolerance=args.tolerance, horizon=args.horizon)
    x = parse_rational(args.x) if args.x is not None else None
    reports = run_audit(d, settings, args.only, args.j, args.tau, args.n, args.workers, x)
    summary: Dict[str, object] = dict(summarize(reports), deformation=d.summary())
    if not args.no_timestamp:
        summary["timestamp"] = datetime.now(timezone.utc).isoformat()
    _emit(render_reports(reports, summary, args.format), args.out)
    return EXIT_AUDIT_FAIL if any(r.status is Status.FAIL for r in reports) else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except RPQError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:
        print(f"\nError occurred: {exc}", file=sys.stderr)
        traceback.print_exc()
        return EXIT_INVALID
