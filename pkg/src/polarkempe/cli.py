"""Command-line harness: ``verify``, ``export`` and ``tables``.

The default output directory can be set with ``POLARKEMPE_OUT``; without it
(and without ``--out``) results go to stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .colouring import colourings_to_csv, distinct_colourings
from .errors import PolarKempeError
from .invariants import (
    class_count_formula,
    colouring_count_formula,
    constant_count_formula,
    invariant_vector,
    kempe_distance_bound,
)
from .polar_graph import build_polar_triangulation, build_truncated
from .reconfiguration import DEFAULT_BUDGET, build_reconfiguration_graph, diameter, kempe_classes
from .verify import DEFAULT_HN_DIAMETER_MAX, DEFAULT_N, TARGETS, run_verification

ENV_OUT = "POLARKEMPE_OUT"

EXPORT_FORMATS = {
    "graph": ("dot", "json", "csv"),
    "colourings": ("json", "csv"),
    "reconfig": ("json", "dot"),
}

TABLE_COLUMNS = (
    "n",
    "labelled_count",
    "distinct_count",
    "formula_count",
    "class_count",
    "constant_count",
    "hn_diameter",
    "hn_bound",
)


def parse_n_range(text: str) -> list[int]:
    """Accept ``6``, ``5..8`` or ``5,7,9`` (and mixtures like ``5..7,10``)."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.update(range(lo_i, hi_i + 1))
        else:
            out.add(int(part))
    if not out:
        raise argparse.ArgumentTypeError("no ring lengths given")
    if min(out) < 5:
        raise argparse.ArgumentTypeError("ring lengths must be >= 5")
    return sorted(out)


def parse_targets(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if names == ["all"]:
        return list(TARGETS)
    unknown = [t for t in names if t not in TARGETS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown targets {unknown}; choose from {', '.join(TARGETS)}")
    return [t for t in TARGETS if t in names]


def _out_dir(args) -> Path | None:
    if args.out:
        return Path(args.out)
    env = os.environ.get(ENV_OUT)
    return Path(env) if env else None


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    explicit = args.targets is not None
    targets = args.targets if explicit else list(TARGETS)
    ns = args.n if args.n is not None else list(DEFAULT_N)
    hn_max = args.hn_diameter_max
    if hn_max is None and not explicit:
        hn_max = DEFAULT_HN_DIAMETER_MAX
    report = run_verification(ns, targets, args.budget_nodes, hn_max)
    text = report.to_text(args.timings)
    sys.stdout.write(text)
    out = _out_dir(args)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify.json").write_text(report.to_json_text(args.timings), encoding="utf-8")
        (out / "verify.txt").write_text(text, encoding="utf-8")
    return 0 if report.passed else 1


# -- export --------------------------------------------------------------------


def _graph_csv(G) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target", "class"])
    for e in G.edges:
        w.writerow([*G.edge_ids(e), str(G.class_of(e))])
    return buf.getvalue()


def _colourings_export(G, fmt: str) -> str:
    cols = distinct_colourings(G)
    if fmt == "csv":
        if G.truncated:
            return colourings_to_csv(cols)
        vecs = [invariant_vector(A) for A in cols]
        extra = {
            "inv_a": [v.a for v in vecs],
            "inv_b": [v.b for v in vecs],
            "inv_c": [v.c for v in vecs],
            "inv_d": [v.d for v in vecs],
        }
        return colourings_to_csv(cols, extra)
    rows = []
    for A in cols:
        row = {"colouring": A.to_json()}
        if not G.truncated:
            row["invariants"] = dict(zip("abcd", invariant_vector(A).as_tuple()))
        rows.append(row)
    return json.dumps({"n": G.n, "truncated": G.truncated, "colourings": rows}, indent=2, sort_keys=True) + "\n"


def export_text(n: int, what: str, fmt: str, truncated: bool = False, budget_nodes: int = DEFAULT_BUDGET) -> str:
    if fmt not in EXPORT_FORMATS.get(what, ()):
        raise ValueError(f"cannot export {what} as {fmt}")
    G = build_truncated(n) if truncated else build_polar_triangulation(n)
    if what == "graph":
        if fmt == "dot":
            return G.to_dot()
        if fmt == "json":
            return G.to_json_text()
        return _graph_csv(G)
    if what == "colourings":
        return _colourings_export(G, fmt)
    R = build_reconfiguration_graph(G, budget_nodes)
    if fmt == "dot":
        return R.to_dot()
    return json.dumps(R.to_json(), indent=2, sort_keys=True) + "\n"


def cmd_export(args) -> int:
    if args.format not in EXPORT_FORMATS[args.what]:
        print(f"error: {args.what} cannot be exported as {args.format} "
              f"(supported: {', '.join(EXPORT_FORMATS[args.what])})", file=sys.stderr)
        return 2
    text = export_text(args.n, args.what, args.format, args.hn, args.budget_nodes)
    path = None
    if args.out:
        path = Path(args.out)
    elif os.environ.get(ENV_OUT):
        tag = f"H{args.n}" if args.hn else f"G{args.n}"
        path = Path(os.environ[ENV_OUT]) / f"{args.what}_{tag}.{args.format}"
    _emit(text, path)
    return 0


# -- tables --------------------------------------------------------------------


def table_rows(n_max: int, hn_diameter_max: int = DEFAULT_HN_DIAMETER_MAX,
               budget_nodes: int = DEFAULT_BUDGET) -> list[dict]:
    rows = []
    for n in range(5, n_max + 1):
        G = build_polar_triangulation(n)
        R = build_reconfiguration_graph(G, budget_nodes)
        part = kempe_classes(G, graph=R)
        constants = sum(1 for d in part.d_values if d == 1)
        hn_diam = ""
        if n <= hn_diameter_max:
            hn_diam = diameter(build_reconfiguration_graph(build_truncated(n), budget_nodes))
        rows.append({
            "n": n,
            "labelled_count": 24 * len(R.nodes),
            "distinct_count": len(R.nodes),
            "formula_count": colouring_count_formula(n),
            "class_count": part.star_count,
            "constant_count": constants,
            "hn_diameter": hn_diam,
            "hn_bound": kempe_distance_bound(n),
        })
        if part.star_count != class_count_formula(n) or constants != constant_count_formula(n):
            raise PolarKempeError(f"table row for n={n} disagrees with the closed forms")
    return rows


def tables_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_tables(args) -> int:
    text = tables_csv(table_rows(args.n_max, args.hn_diameter_max, args.budget_nodes))
    path = Path(args.out) if args.out else (
        Path(os.environ[ENV_OUT]) / "tables.csv" if os.environ.get(ENV_OUT) else None
    )
    _emit(text, path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarkempe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget-nodes", type=int, default=DEFAULT_BUDGET,
                       help="fail if a state space has more distinct colourings than this")
        p.add_argument("--out", help="output directory (verify) or file (export, tables)")

    p = sub.add_parser("verify", help="run verification suites and report pass/fail per check")
    p.add_argument("--n", type=parse_n_range, help="ring lengths, e.g. 5..8 (default 5..8)")
    p.add_argument("--targets", type=parse_targets,
                   help=f"comma-separated subset of: {', '.join(TARGETS)} (default: all)")
    p.add_argument("--hn-diameter-max", type=int, default=None,
                   help=f"skip H_n diameter above this n (default {DEFAULT_HN_DIAMETER_MAX} "
                        "when --targets is not given)")
    p.add_argument("--timings", action="store_true", help="include wall times (breaks byte-stability)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="export a graph, its colourings or its reconfiguration graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", choices=sorted(EXPORT_FORMATS), required=True)
    p.add_argument("--format", choices=("dot", "json", "csv"), required=True)
    p.add_argument("--hn", action="store_true", help="use H_n = G_n - b instead of G_n")
    common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("tables", help="emit the per-n summary table as CSV")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--hn-diameter-max", type=int, default=DEFAULT_HN_DIAMETER_MAX)
    common(p)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", None) is not None and isinstance(args.n, int) and args.n < 5:
        print("error: --n must be >= 5", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except PolarKempeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
