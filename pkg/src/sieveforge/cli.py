"""Command-line entry point: ``sieveforge <subcommand> ...``.

Exit codes: 0 success, 1 a check or comparison failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .graph import (
    BUILTIN_NAMES,
    Graph,
    Graph6Error,
    builtin_graph,
    emit_graph6,
    parse_graph6,
    read_graph6_file,
)
from .harness import STATISTICS, SRG_STATS, DiscriminationReport, embed_stats, run_csl, run_srg
from .parallel import THREADS_ENV, default_threads
from .snn import ConfigError, SnnConfig, run_snn, transform_dataset
from .wl import wl_distinguish

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- graph sources ------------------------------------------------------------


def _graph_from_record(rec: dict, where: str) -> Graph:
    try:
        n = int(rec["n"])
        edges = [tuple(e) for e in rec["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{where}: expected keys 'n' and 'edges' ({exc})") from None
    feats = rec.get("edge_features")
    try:
        return Graph(n, edges, feats)
    except ValueError as exc:
        raise UsageError(f"{where}: {exc}") from None


def read_jsonl_graphs(path: Path) -> tuple[list[Graph], list[str]]:
    """Graphs stored one per line as ``{"id", "n", "edges", "edge_features"?}``."""
    graphs, ids = [], []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
        graphs.append(_graph_from_record(rec, f"{path}:{lineno}"))
        ids.append(str(rec.get("id", len(ids))))
    return graphs, ids


def load_graphs(source: str) -> tuple[list[Graph], list[str]]:
    """Resolve ``builtin:name``, a bare builtin name, a file, or a literal graph6 string."""
    name = source[len("builtin:"):] if source.startswith("builtin:") else None
    if name is None and source in BUILTIN_NAMES and not Path(source).exists():
        name = source
    if name is not None:
        try:
            return [builtin_graph(name)], [name]
        except KeyError:
            raise UsageError(f"unknown builtin {name!r}; available: {', '.join(BUILTIN_NAMES)}") from None
    path = Path(source)
    if path.exists():
        if path.suffix == ".jsonl":
            return read_jsonl_graphs(path)
        try:
            graphs = read_graph6_file(path)
        except Graph6Error as exc:
            raise UsageError(f"{path}: {exc}") from None
        return graphs, [f"{path.stem}#{i}" for i in range(len(graphs))]
    try:
        return [parse_graph6(source)], [source]
    except Graph6Error:
        raise UsageError(f"{source!r} is not a file, a builtin name, or a graph6 string") from None


def load_one(source: str) -> Graph:
    graphs, _ = load_graphs(source)
    if len(graphs) != 1:
        raise UsageError(f"{source}: expected exactly one graph, found {len(graphs)}")
    return graphs[0]


# --- argument handling --------------------------------------------------------


def _levels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must be comma-separated integers, got {text!r}") from None


def _stats(text: str) -> tuple[str, ...]:
    names = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [x for x in names if x not in STATISTICS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"statistics must come from {', '.join(STATISTICS)}")
    return names


def _add_snn_flags(p: argparse.ArgumentParser, variant: str, levels: str | None) -> None:
    p.add_argument("--variant", choices=("alpha", "beta"), default=variant)
    p.add_argument("--levels", type=_levels, default=None,
                   help=f"comma-separated levels, -1 for the stable level (default {levels or 'per variant'}); "
                        "write negative values as --levels=-1,-1")
    p.add_argument("--normalize", action="store_true", help="normalized alpha output")
    p.add_argument("--gamma", default="1", help="decay factor in (0, 1], e.g. 1/2 or 0.5")
    p.add_argument("--featured", action="store_true", help="use edge features")
    p.add_argument("--scalar", choices=("bigint", "rational", "float"), default=None)


def _snn_config(args) -> SnnConfig:
    levels = args.levels
    try:
        if args.variant == "alpha":
            return SnnConfig("alpha", alpha_levels=levels or (1, 1), normalize=args.normalize,
                             gamma=args.gamma, featured=args.featured, scalar_kind=args.scalar)
        return SnnConfig("beta", beta_levels=levels or (-1,), normalize=args.normalize,
                         gamma=args.gamma, featured=args.featured, scalar_kind=args.scalar)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def _threads(args) -> int:
    try:
        return args.threads if args.threads is not None else default_threads()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sieveforge", description="Sieve network transforms and isomorphism tests.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help=f"worker count (default ${THREADS_ENV} or all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="replace adjacency matrices by SNN outputs")
    p.add_argument("--in", dest="source", required=True, help="graph6 file, .jsonl file, or builtin:NAME")
    _add_snn_flags(p, "alpha", None)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", default="-", help="output path (default stdout)")

    p = sub.add_parser("iso", parents=[common], help="pairwise verdict from SNN statistics and 1-WL")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_snn_flags(p, "alpha", "1,1")
    p.add_argument("--stats", type=_stats, default=("var",))

    p = sub.add_parser("csl", parents=[common], help="CSL(41, s) discrimination run")
    p.add_argument("--out", default="-", help="JSON report path (default stdout)")
    p.add_argument("--csv", default=None, help="also write per-graph embeddings as CSV")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in the report")

    p = sub.add_parser("srg", parents=[common], help="all-pairs discrimination of a graph6 family")
    p.add_argument("--in", dest="source", required=True)
    _add_snn_flags(p, "beta", "-1,-1,-1")
    p.add_argument("--stats", type=_stats, default=SRG_STATS)
    p.add_argument("--out", default="-")
    p.add_argument("--csv", default=None)
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("validate", parents=[common], help="run the oracle and golden-matrix checks")
    p.add_argument("--quick", action="store_true", help="fewer random trials")

    p = sub.add_parser("g6", help="graph6 utilities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--roundtrip", metavar="FILE", help="parse and re-emit every line, comparing")
    g.add_argument("--emit", metavar="SOURCE", help="print graph6 for a builtin or file")
    return parser


# --- subcommands --------------------------------------------------------------


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_transform(args) -> int:
    cfg = _snn_config(args)
    threads = _threads(args)
    graphs, ids = load_graphs(args.source)
    if args.format == "csv" and cfg.featured:
        raise UsageError("CSV export supports scalar kinds only; use --format jsonl with --featured")
    try:
        if args.out == "-":
            count = transform_dataset(graphs, cfg, sys.stdout, args.format, ids, threads)
        else:
            with open(args.out, "w", newline="") as fh:
                count = transform_dataset(graphs, cfg, fh, args.format, ids, threads)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    print(f"transformed {count} graph(s) with {cfg.label()}", file=sys.stderr)
    return EXIT_OK


def cmd_iso(args) -> int:
    cfg = _snn_config(args)
    a, b = load_one(args.a), load_one(args.b)
    try:
        ea = embed_stats(run_snn(a, cfg).matrix, args.stats)
        eb = embed_stats(run_snn(b, cfg).matrix, args.stats)
    except (ValueError, ConfigError) as exc:
        raise UsageError(str(exc)) from None
    wl = "distinguished" if wl_distinguish(a, b) else "indistinguishable"
    snn = "DISTINGUISHED" if ea.values != eb.values or a.n != b.n else "indistinguishable"
    print(f"WL: {wl}; SNN({','.join(args.stats)}): {snn}")
    return EXIT_OK


def _emit_report(report: DiscriminationReport, args) -> None:
    _write(args.out, report.to_json(include_timing=args.timing))
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    summary = (f"{report.config.label()}: "
               f"{len(report.classes)} classes, {report.distinguished}/{report.total_pairs} pairs distinguished, "
               f"failure rate {report.failure_rate}")
    print(summary, file=sys.stderr)


def cmd_csl(args) -> int:
    report = run_csl(seed=args.seed, threads=_threads(args))
    _emit_report(report, args)
    sizes = sorted(len(c) for c in report.classes)
    return EXIT_OK if sizes == [15] * 10 and not report.failures else EXIT_FAIL


def cmd_srg(args) -> int:
    if args.levels is None and args.variant == "beta":
        args.levels = (-1, -1, -1)
    cfg = _snn_config(args)
    graphs, ids = load_graphs(args.source)
    try:
        report = run_srg(graphs, cfg, args.stats, threads=_threads(args), ids=ids)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report.seed = args.seed
    _emit_report(report, args)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = checks.run_all(seed=args.seed, quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed (seed {args.seed})")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_g6(args) -> int:
    if args.emit:
        for g in load_graphs(args.emit)[0]:
            print(emit_graph6(g))
        return EXIT_OK
    path = Path(args.roundtrip)
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    bad = total = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        if not line:
            continue
        total += 1
        try:
            again = emit_graph6(parse_graph6(line))
        except Graph6Error as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            bad += 1
            continue
        if again != line:
            print(f"line {lineno}: re-emitted as {again!r}", file=sys.stderr)
            bad += 1
    print(f"{total - bad}/{total} graphs round-trip")
    return EXIT_FAIL if bad else EXIT_OK


COMMANDS = {
    "transform": cmd_transform,
    "iso": cmd_iso,
    "csl": cmd_csl,
    "srg": cmd_srg,
    "validate": cmd_validate,
    "g6": cmd_g6,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sieveforge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
