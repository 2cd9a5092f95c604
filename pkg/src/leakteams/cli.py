"""Command-line interface.

One subcommand per pipeline stage so each stage is independently testable,
plus `pipeline` for the whole batch run, `gen` for synthetic inputs and
`sweep` for threshold exploration. Data goes to files or stdout; diagnostics
go to stderr with an `error:` prefix.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .clustering import (
    Partition,
    cluster_members,
    verify_free_leak,
)
from .errors import NoChannelError, ValidationError
from .fileio import (
    format_number,
    matrix_from_csv,
    matrix_to_csv,
    parse_edge_csv,
    parse_interaction_csvs,
)
from .graph import KIND_CLOSURE, KIND_DIRECT, KIND_SYMMETRIZED, direct_matrix
from .pipeline import (
    PipelineConfig,
    eta_sweep,
    run_pipeline,
    sweep_to_csv,
)
from .propagation import closure, propagate_from, symmetrize, witness_path


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read(path: str) -> str:
    return Path(path).read_text()


def _members_arg(value: str | None) -> list[str] | None:
    return value.split(",") if value else None


def _load_graph(args):
    members = _members_arg(args.members)
    if args.format == "interactions":
        if not args.held:
            raise ValidationError("--format interactions requires --held")
        return parse_interaction_csvs(_read(args.input), _read(args.held), members)
    return parse_edge_csv(_read(args.input), members)


def _add_graph_input_args(p):
    p.add_argument("--input", required=True, help="edge or interaction CSV")
    p.add_argument("--format", choices=["edges", "interactions"], default="edges")
    p.add_argument("--held", help="member,held_qty CSV (interactions mode)")
    p.add_argument("--members", help="comma-separated labels to pre-declare")


def teams_to_json(teams, provenance=None) -> str:
    doc = {"teams": [list(t) for t in teams]}
    if provenance:
        doc["provenance"] = provenance
    return json.dumps(doc, indent=2) + "\n"


def report_to_json(report, labels) -> str:
    doc = {
        "eta": report.eta,
        "ok": report.ok,
        "violations": [
            {
                "member_i": labels[v.member_i],
                "member_j": labels[v.member_j],
                "cluster_i": v.cluster_i,
                "cluster_j": v.cluster_j,
                "p_sym": v.p_sym,
            }
            for v in report.violations
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _partition_from_teams_json(text: str, labels) -> Partition:
    doc = json.loads(text)
    index = {lab: i for i, lab in enumerate(labels)}
    try:
        groups = [[index[lab] for lab in team] for team in doc["teams"]]
    except KeyError as exc:
        raise ValidationError(f"teams file references unknown member {exc}") from None
    covered = sorted(m for g in groups for m in g)
    if covered != list(range(len(labels))):
        raise ValidationError("teams file does not cover the matrix members exactly")
    from .clustering import _canonical_partition

    return _canonical_partition(groups, len(labels))


def cmd_ingest(args) -> int:
    graph = _load_graph(args)
    _write(args.out_matrix, matrix_to_csv(direct_matrix(graph)))
    return 0


def cmd_propagate(args) -> int:
    graph = _load_graph(args)
    matrix = direct_matrix(graph)
    owner = graph.index_of(args.owner)
    energy = propagate_from(matrix, owner)
    lines = ["member,probability"]
    for i, lab in enumerate(graph.labels):
        lines.append(f"{lab},{format_number(energy.p[i])}")
    _write(args.out, "\n".join(lines) + "\n")
    if args.witness:
        target = graph.index_of(args.witness)
        path = witness_path(matrix, owner, target)
        labels = [graph.labels[m] for m in path.members]
        sys.stdout.write(
            f"witness: {' -> '.join(labels)} (product {format_number(path.product)})\n"
        )
    return 0


def cmd_closure(args) -> int:
    graph = _load_graph(args)
    closed = closure(direct_matrix(graph))
    _write(args.out_matrix, matrix_to_csv(closed))
    if args.plot_matrix:
        from .plots import plot_matrix_heatmap

        plot_matrix_heatmap(closed, args.plot_matrix)
    return 0


def cmd_symmetrize(args) -> int:
    closed = matrix_from_csv(_read(args.input), KIND_CLOSURE)
    _write(args.out_matrix, matrix_to_csv(symmetrize(closed)))
    return 0


def cmd_cluster(args) -> int:
    sym = matrix_from_csv(_read(args.input), KIND_SYMMETRIZED)
    seeds = list(range(min(args.seeds, sym.n))) or None
    partition = cluster_members(sym, args.eta, seeds)
    teams = [[sym.labels[m] for m in c] for c in partition.clusters]
    _write(args.out_teams, teams_to_json(teams))
    report = verify_free_leak(partition, sym, args.eta)
    if args.out_report:
        _write(args.out_report, report_to_json(report, sym.labels))
    return 0


def cmd_verify(args) -> int:
    sym = matrix_from_csv(_read(args.input), KIND_SYMMETRIZED)
    partition = _partition_from_teams_json(_read(args.teams), sym.labels)
    report = verify_free_leak(partition, sym, args.eta)
    _write(args.out_report, report_to_json(report, sym.labels))
    return 0 if report.ok else 1


def cmd_pipeline(args) -> int:
    config = PipelineConfig(
        eta=args.eta,
        seed_count=args.seeds,
        input_mode=args.format,
        members=_members_arg(args.members),
    )
    held_text = _read(args.held) if args.held else None
    result = run_pipeline(config, _read(args.input), held_text)
    if args.out_matrix:
        _write(args.out_matrix, matrix_to_csv(result.sym))
    _write(args.out_teams, teams_to_json(result.teams, result.provenance))
    if args.out_report:
        _write(args.out_report, report_to_json(result.report, result.graph.labels))
    if args.plot_matrix:
        from .plots import plot_matrix_heatmap

        plot_matrix_heatmap(result.sym, args.plot_matrix, result.partition)
    return 0


def cmd_gen(args) -> int:
    from .generate import generate_edge_csv

    _write(args.out, generate_edge_csv(args.n, args.degree, args.rng_seed))
    return 0


def cmd_sweep(args) -> int:
    sym = matrix_from_csv(_read(args.input), KIND_SYMMETRIZED)
    etas = [float(x) for x in args.etas.split(",")]
    rows = eta_sweep(sym, etas)
    _write(args.out, sweep_to_csv(rows))
    if args.plot:
        from .plots import plot_eta_sweep

        plot_eta_sweep(rows, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leakteams",
        description="Propagation closure and leak-free team partitioning "
        "for directed social graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build the direct propagation matrix")
    _add_graph_input_args(p)
    p.add_argument("--out-matrix", help="destination CSV (default stdout)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("propagate", help="single-owner propagation probabilities")
    _add_graph_input_args(p)
    p.add_argument("--owner", required=True, help="owner member label")
    p.add_argument("--witness", help="also print a witness path to this member")
    p.add_argument("--out", help="destination CSV (default stdout)")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("closure", help="all-pairs propagation closure")
    _add_graph_input_args(p)
    p.add_argument("--out-matrix", help="destination CSV (default stdout)")
    p.add_argument("--plot-matrix", help="render a heatmap PNG of the closure")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("symmetrize", help="pairwise max of a closure matrix")
    p.add_argument("--input", required=True, help="closure matrix CSV")
    p.add_argument("--out-matrix", help="destination CSV (default stdout)")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("cluster", help="partition members into leak-free teams")
    p.add_argument("--input", required=True, help="symmetrized matrix CSV")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--seeds", type=int, default=2, help="initial cluster count")
    p.add_argument("--out-teams", help="teams JSON (default stdout)")
    p.add_argument("--out-report", help="leak report JSON")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("verify", help="check a partition against the threshold")
    p.add_argument("--input", required=True, help="symmetrized matrix CSV")
    p.add_argument("--teams", required=True, help="teams JSON to check")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--out-report", help="leak report JSON (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pipeline", help="full batch run: ingest through verify")
    _add_graph_input_args(p)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--seeds", type=int, default=2, help="initial cluster count")
    p.add_argument("--out-matrix", help="symmetrized matrix CSV")
    p.add_argument("--out-teams", help="teams JSON (default stdout)")
    p.add_argument("--out-report", help="leak report JSON")
    p.add_argument("--plot-matrix", help="heatmap PNG, clusters contiguous")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("gen", help="generate a seeded random edge CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=float, required=True, help="average out-degree")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", help="destination CSV (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="cluster counts across thresholds")
    p.add_argument("--input", required=True, help="symmetrized matrix CSV")
    p.add_argument("--etas", required=True, help="comma-separated, ascending")
    p.add_argument("--out", help="destination CSV (default stdout)")
    p.add_argument("--plot", help="render a step plot PNG of the sweep")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, NoChannelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"error: internal: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
