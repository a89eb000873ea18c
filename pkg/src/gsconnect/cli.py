"""Command-line entry point: ``gsconnect <subcommand> [flags]``.

Every subcommand writes its result to stdout (JSON unless a CSV or DOT format
is requested). Failures print a JSON error object to stderr and exit with a
nonzero status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import builders
from .errors import GraphStateError
from .graph import Graph, classify_topology
from .io import graph_from_json, graph_to_dict, graph_to_dot, protocol_from_json
from .measurement import apply_protocol
from .oracle import verify_rules
from .protocols import (
    generate_bi_star_variant,
    generate_even_max_connect,
    generate_max_connect,
    predicted_cost,
)
from .search import enumerate_configs, enumerate_table

__all__ = ["main", "build_parser", "cmd_cost", "cost_rows"]

TOPOLOGIES = ("star", "multi-star", "complete", "complete-bipartite", "path", "bi-star", "tri-star")


class CLIError(GraphStateError):
    code = "usage"


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or comma list, got {text!r}") from exc


def _leaf_counts(switches: int | None, leaves: list[int]) -> list[int]:
    """``--leaves 2`` with ``--switches 5`` means five switches of two clients."""
    if len(leaves) == 1 and switches is not None:
        return leaves * switches
    if switches is not None and len(leaves) != switches:
        raise CLIError(f"--leaves lists {len(leaves)} counts but --switches is {switches}")
    return leaves


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def build_topology(topology: str, switches: int | None, leaves: list[int] | None, size: int | None) -> Graph:
    leaves = leaves or []

    def need(k: int) -> list[int]:
        if len(leaves) != k:
            raise CLIError(f"{topology} needs --leaves with {k} value(s)")
        return leaves

    if topology == "star":
        return builders.build_star(need(1)[0])
    if topology == "multi-star":
        if not leaves:
            raise CLIError("multi-star needs --leaves")
        return builders.build_multi_star(_leaf_counts(switches, leaves))
    if topology == "complete":
        if size is None:
            raise CLIError("complete needs --size")
        return builders.build_complete(size)
    if topology == "path":
        n = size if size is not None else switches
        if n is None:
            raise CLIError("path needs --size")
        return builders.build_path(n)
    if topology == "complete-bipartite":
        return builders.build_complete_bipartite(*need(2))
    if topology == "bi-star":
        return builders.build_bi_star(*need(2))
    if topology == "tri-star":
        return builders.build_tri_star(*need(3))
    raise CLIError(f"unknown topology {topology!r}")


def _load_graph(args) -> Graph:
    if getattr(args, "graph", None):
        return graph_from_json(_read_text(args.graph))
    if getattr(args, "topology", None):
        return build_topology(args.topology, args.switches, args.leaves, args.size)
    raise CLIError("give --graph FILE or --topology")


# --- subcommands -------------------------------------------------------------


def cmd_build(args) -> int:
    g = build_topology(args.topology, args.switches, args.leaves, args.size)
    _emit(graph_to_dict(g))
    return 0


def cmd_run(args) -> int:
    g = graph_from_json(_read_text(args.graph))
    p = protocol_from_json(_read_text(args.protocol))
    run = apply_protocol(g, p, keep_trace=args.trace)
    out = {
        "graph": graph_to_dict(run.graph),
        "cost": run.cost.to_dict(),
        "topology_class": classify_topology(run.graph).to_dict(),
    }
    if args.trace:
        out["trace"] = [graph_to_dict(h) for h in run.trace]
    _emit(out)
    return 0


def cmd_maxconnect(args) -> int:
    counts = _leaf_counts(args.switches, args.leaves)
    if len(counts) % 2:
        if args.ending == "Y":
            p, final = generate_bi_star_variant(counts)
            _emit({
                "alpha": len(final),
                "topology_class": classify_topology(final).to_dict(),
                "protocol": p.to_dict(),
                "graph": graph_to_dict(final),
            })
            return 0
        out = generate_max_connect(counts, check_lc=not args.no_lc_check)
    else:
        out = generate_even_max_connect(counts, args.even_variant, check_lc=not args.no_lc_check)
    report = out.to_dict()
    report["graph"] = graph_to_dict(out.final_graph)
    _emit(report)
    return 0


def cmd_enumerate(args) -> int:
    rows = [o.to_dict() for o in enumerate_table(args.switches, args.leaves, include_mirrors=args.all)]
    enum = enumerate_configs(args.switches)
    if args.format == "csv":
        buf = io.StringIO()
        fields = ["config", "mirror", "gates", "topology_class", "topology", "heavy_centers", "surviving_vertices", "source"]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            r = dict(r)
            for k in ("config", "mirror", "heavy_centers"):
                r[k] = " ".join(map(str, r[k]))
            w.writerow(r)
        sys.stdout.write(buf.getvalue())
    else:
        _emit({"m": args.switches, "n": args.leaves, "total_configs": len(enum.configs), "classes": enum.classes, "rows": rows})
    return 0


def cost_rows(m_max: int, n_max: int, include_even: bool = False) -> list[dict]:
    """Predicted and simulated cost for every ``m <= m_max``, ``0 <= n <= n_max``.

    Odd ``m`` use the closed form and the maximal-connectivity sweep. Even
    ``m`` (only with ``include_even``) use the remove-last reduction followed
    by the sweep, whose predicted cost is ``(n + 1) m / 2``.
    """
    if m_max < 1 or n_max < 0:
        raise CLIError("m_max must be at least 1 and n_max non-negative")
    rows = []
    for m in range(1, m_max + 1):
        if m % 2 == 0 and not include_even:
            continue
        for n in range(n_max + 1):
            if m % 2:
                pred = predicted_cost(m, n)
                actual = generate_max_connect([n] * m, check_lc=False).cost.total
                note = "odd"
            else:
                pred = (n + 1) * m // 2
                actual = generate_even_max_connect([n] * m, check_lc=False).cost.total
                note = "even (remove-last reduction)"
            rows.append({"m": m, "n": n, "predicted_cost": pred, "actual_cost": actual, "note": note})
    return rows


def cmd_cost(m_max: int, n_max: int, format: str = "csv", include_even: bool = False) -> str:
    """Cost table as CSV (header ``m,n,predicted_cost,actual_cost``) or JSON text.

    With ``include_even`` a trailing ``note`` column labels each row.
    """
    rows = cost_rows(m_max, n_max, include_even)
    fields = ["m", "n", "predicted_cost", "actual_cost"] + (["note"] if include_even else [])
    if format == "json":
        return json.dumps([{k: r[k] for k in fields} for r in rows], indent=2) + "\n"
    if format != "csv":
        raise CLIError(f"unknown format {format!r}")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _cmd_cost(args) -> int:
    sys.stdout.write(cmd_cost(args.m_max, args.n_max, args.format, args.include_even))
    return 0


def cmd_verify(args) -> int:
    rep = verify_rules(args.exhaustive_up_to, args.trials, args.max_vertices, args.seed)
    _emit(rep.to_dict())
    return 0 if rep.ok else 1


def cmd_export(args) -> int:
    g = _load_graph(args)
    if args.format == "dot":
        sys.stdout.write(graph_to_dot(g))
    else:
        _emit(graph_to_dict(g))
    return 0


# --- parser ------------------------------------------------------------------


def _topology_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--topology", choices=TOPOLOGIES, required=required)
    p.add_argument("--switches", type=int, help="number of switches (multi-star, path)")
    p.add_argument("--leaves", type=_int_list, help="leaf count, or comma list per switch/side")
    p.add_argument("--size", type=int, help="vertex count (complete, path)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsconnect", description="Graph-state connectivity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a topology as graph JSON")
    _topology_flags(p, required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", help="apply a protocol JSON to a graph JSON")
    p.add_argument("--graph", required=True, help="graph JSON file, or - for stdin")
    p.add_argument("--protocol", required=True, help="protocol JSON file, or - for stdin")
    p.add_argument("--trace", action="store_true", help="include every intermediate graph")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("maxconnect", help="maximal-connectivity protocol on a multi-star")
    p.add_argument("--switches", type=int, required=True)
    p.add_argument("--leaves", type=_int_list, default=[1])
    p.add_argument("--ending", choices=("X", "Y"), default="X")
    p.add_argument("--even-variant", choices=("remove-last", "y-merge"), default="remove-last")
    p.add_argument("--no-lc-check", action="store_true", help="skip the LC-equivalence check")
    p.set_defaults(func=cmd_maxconnect)

    p = sub.add_parser("enumerate", help="classify every removal set on an odd multi-star")
    p.add_argument("--switches", type=int, required=True)
    p.add_argument("--leaves", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--all", action="store_true", help="include mirror duplicates")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cost", help="predicted vs simulated measurement cost")
    p.add_argument("--m-max", type=int, default=11)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--include-even", action="store_true")
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("verify", help="check the measurement rules against the stabilizer oracle")
    p.add_argument("--max-vertices", type=int, default=10)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--exhaustive-up-to", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write a graph as JSON or DOT")
    p.add_argument("--graph", help="graph JSON file, or - for stdin")
    _topology_flags(p, required=False)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        json.dump({"error": "usage", "message": "invalid command-line arguments"}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    try:
        return args.func(args)
    except GraphStateError as exc:
        json.dump(exc.to_dict(), sys.stderr)
    except (ValueError, KeyError) as exc:
        json.dump({"error": "invalid_input", "message": str(exc)}, sys.stderr)
    sys.stderr.write("\n")
    return 1


if __name__ == "__main__":
    sys.exit(main())
