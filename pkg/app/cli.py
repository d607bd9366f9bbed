# app/cli.py
"""
misbench command line.

  gen     sample a random d-regular graph and write it (edge-list or DIMACS)
  solve   run one solver on a graph file, print the independent set
  bench   run a benchmark matrix from a JSON config file
  report  turn a records file into csv / json-lines / plot-table

Formats
  edge-list  first line "n m", then m lines "u v", 0-indexed
  dimacs     "p edge n m", then "e u v" lines, 1-indexed, "c" comments
  IS output  "alpha k", then the k vertex ids in ascending order
  records    one JSON object per line (see BenchRecord)

Exit codes: 0 success, 1 runtime failure, 2 usage or parameter error.
"""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from app.core.config import get_settings
from app.core.errors import ConfigError, MalformedRecord, MisBenchError, TooLarge
from app.core.logging import configure_logging
from app.models.bench import REPORT_FORMATS
from app.models.graph import RrgParams
from app.services.bench import bounds_from_config, expand_matrix, load_bench_config, run_benchmark
from app.services.bounds import builtin_bounds, density
from app.services.graph_io import GRAPH_FORMATS, parse_graph, serialize_graph
from app.services.greedy import serialize_independent_set
from app.services.records import DbRecordSink, JsonlRecordSink, read_records
from app.services.report import emit_report
from app.services.rrg import sample_rrg
from app.services.solvers import SOLVER_IDS, run_solver

logger = logging.getLogger("app.cli")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _fail(exc: Exception, code: int) -> int:
    reason = exc.reason if isinstance(exc, MisBenchError) else type(exc).__name__
    print(f"error: {reason}: {exc}", file=sys.stderr)
    return code


def _write_output(data: bytes, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


# ---------- commands ----------

def cmd_gen(args: argparse.Namespace) -> int:
    try:
        params = RrgParams(
            n=args.n,
            d=args.d,
            seed=args.seed,
            max_restarts=args.max_restarts or get_settings().max_restarts,
            method=args.method,
        )
        g = sample_rrg(params)
    except (MisBenchError, ValueError) as e:
        return _fail(e, EXIT_USAGE)
    _write_output(serialize_graph(g, args.format), args.out)
    return EXIT_OK


def _solver_params(args: argparse.Namespace) -> dict:
    keys = ("mu_start", "mu_end", "sweeps", "ramp", "scan", "replicas", "mu_min", "mu_max", "rounds", "sweeps_per_round")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        g = parse_graph(Path(args.graph).read_bytes(), args.format)
    except (OSError, MisBenchError, UnicodeDecodeError) as e:
        return _fail(e, EXIT_USAGE)

    try:
        t0 = time.perf_counter()
        s = run_solver(g, args.solver, args.seed, _solver_params(args))
        elapsed = time.perf_counter() - t0
    except (TooLarge, ValueError) as e:
        return _fail(e, EXIT_USAGE)

    _write_output(serialize_independent_set(s), "-")
    print(f"alpha={s.size} density={density(s, g.n):.6f} time_s={elapsed:.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    settings = get_settings()
    try:
        config = load_bench_config(args.config)
    except ConfigError as e:
        return _fail(e, EXIT_USAGE)

    matrix = expand_matrix(config)
    bounds = bounds_from_config(config)
    workers = args.workers or config.workers or settings.workers

    sinks = [JsonlRecordSink(config.output.records)]
    try:
        if settings.store_records_in_db:
            sinks.append(DbRecordSink(settings.database_url))
        records = run_benchmark(matrix, bounds=bounds, sinks=sinks, workers=workers)
        if config.output.report:
            data = emit_report(records, bounds, config.output.report_format, settings.report_precision)
            Path(config.output.report).write_bytes(data)
    except (OSError, RuntimeError, KeyboardInterrupt) as e:
        logger.error("benchmark aborted: %s", e)
        return _fail(e, EXIT_FAILURE)
    finally:
        for sink in sinks:
            sink.close()

    failed = sum(1 for r in records if not r.accepted)
    logger.info("%d records written to %s (%d failed)", len(records), config.output.records, failed)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    try:
        bounds = bounds_from_config(load_bench_config(args.config)) if args.config else builtin_bounds()
    except ConfigError as e:
        return _fail(e, EXIT_USAGE)
    try:
        records = read_records(args.records)
    except OSError as e:
        return _fail(e, EXIT_USAGE)
    except MalformedRecord as e:
        return _fail(e, EXIT_FAILURE)

    data = emit_report(records, bounds, args.format, get_settings().report_precision)
    _write_output(data, args.out)
    return EXIT_OK


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="misbench",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", default=None, help="logging level (default from settings)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="sample a random regular graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="-")
    gen.add_argument("--format", choices=GRAPH_FORMATS, default="edge-list")
    gen.add_argument("--method", choices=("configuration", "steger-wormald"), default="configuration")
    gen.add_argument("--max-restarts", type=int, default=None)
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="solve one graph file")
    solve.add_argument("graph")
    solve.add_argument("--format", choices=GRAPH_FORMATS, default="edge-list")
    solve.add_argument("--solver", choices=SOLVER_IDS, default="dga")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--mu-start", dest="mu_start", type=float)
    solve.add_argument("--mu-end", dest="mu_end", type=float)
    solve.add_argument("--sweeps", type=int)
    solve.add_argument("--ramp", choices=("linear", "geometric"))
    solve.add_argument("--scan", choices=("random", "colored"))
    solve.add_argument("--replicas", type=int)
    solve.add_argument("--mu-min", dest="mu_min", type=float)
    solve.add_argument("--mu-max", dest="mu_max", type=float)
    solve.add_argument("--rounds", type=int)
    solve.add_argument("--sweeps-per-round", dest="sweeps_per_round", type=int)
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="run a benchmark matrix")
    bench.add_argument("config")
    bench.add_argument("--workers", type=int, default=None)
    bench.set_defaults(func=cmd_bench)

    report = sub.add_parser("report", help="render a records file")
    report.add_argument("records")
    report.add_argument("--format", choices=REPORT_FORMATS, default="csv")
    report.add_argument("--config", default=None, help="bench config whose bounds rows extend the builtin table")
    report.add_argument("--out", default="-")
    report.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or get_settings().log_level)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
