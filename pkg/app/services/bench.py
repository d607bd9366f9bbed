# app/services/bench.py
"""
Benchmark harness: expand run matrices, execute them (optionally on a process
pool), time instance generation and the solver separately, validate every
independent set, and fit runtime scaling exponents.
"""
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from statistics import median
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from app.core.config import get_settings
from app.core.errors import (
    ConfigError,
    InsufficientPoints,
    InvalidIndependentSet,
    MisBenchError,
    NoBoundForDegree,
)
from app.core.rng import derive_seed
from app.models.bench import BenchConfig, BenchRecord, RunSpec, ScalingFit
from app.models.bounds import BoundsRow, BoundsTable
from app.models.graph import RrgParams
from app.services.bounds import approximation_ratio, builtin_bounds, density, is_hard_regime
from app.services.greedy import is_maximal, validate_is
from app.services.records import RecordSink
from app.services.rrg import sample_rrg
from app.services.solvers import run_solver

logger = logging.getLogger(__name__)

HARD_BENCHMARK_DEGREES = (20, 100)
HARD_BENCHMARK_SOLVERS = ("ga", "dga", "sa", "pt")


# ---------- matrices ----------

def hard_benchmark_matrix(
    n_list: Sequence[int],
    seeds: int,
    master_seed: int = 0,
    params: Optional[Dict[str, Dict[str, Any]]] = None,
) -> List[RunSpec]:
    """
    d in {20, 100} x {GA, DGA, SA, PT} x n x seed. All four solvers see the
    same instance for a given (d, n, seed).
    """
    params = params or {}
    matrix = []
    for d in HARD_BENCHMARK_DEGREES:
        for k, solver in enumerate(HARD_BENCHMARK_SOLVERS):
            for n in n_list:
                for s in range(seeds):
                    matrix.append(
                        RunSpec(
                            solver=solver,
                            params=dict(params.get(solver, {})),
                            n=n,
                            d=d,
                            sampler="steger-wormald",
                            instance_seed=derive_seed(master_seed, d, n, s),
                            solver_seed=derive_seed(master_seed, d, n, s, k + 1),
                        )
                    )
    return matrix


def expand_matrix(config: BenchConfig) -> List[RunSpec]:
    """
    One RunSpec per (entry, n, d) with ``seeds`` repetitions. Instance seeds
    depend on (master, n, d) only, so entries for different solvers share
    their instances; solver seeds also mix in the entry index.
    """
    matrix = []
    for e, entry in enumerate(config.matrix):
        for n in entry.n:
            for d in entry.d:
                matrix.append(
                    RunSpec(
                        solver=entry.solver,
                        params=entry.params,
                        n=n,
                        d=d,
                        sampler=entry.sampler,
                        instance_seed=derive_seed(config.master_seed, n, d),
                        solver_seed=derive_seed(config.master_seed, n, d, e + 1),
                        repetitions=entry.seeds,
                    )
                )
    if config.hard_benchmark is not None:
        preset = config.hard_benchmark
        matrix.extend(hard_benchmark_matrix(preset.n, preset.seeds, config.master_seed, preset.params))
    return matrix


def load_bench_config(path: Union[str, Path]) -> BenchConfig:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror or e}") from None
    try:
        return BenchConfig.model_validate(json.loads(raw))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ConfigError(f"{path}: {where}: {first['msg']}") from None


def bounds_from_config(config: BenchConfig) -> BoundsTable:
    return builtin_bounds().extend(config.bounds)


# ---------- execution ----------

def _repetition_seeds(spec: RunSpec, rep: int) -> Tuple[int, int]:
    if spec.repetitions == 1:
        return spec.instance_seed, spec.solver_seed
    return derive_seed(spec.instance_seed, rep), derive_seed(spec.solver_seed, rep)


def _record_base(spec: RunSpec, spec_index: int, rep: int) -> Dict[str, Any]:
    instance_seed, solver_seed = _repetition_seeds(spec, rep)
    return dict(
        spec_index=spec_index,
        repetition=rep,
        solver=spec.solver,
        params=spec.params,
        n=spec.n,
        d=spec.d,
        sampler=spec.sampler,
        instance_seed=instance_seed,
        solver_seed=solver_seed,
        hard_regime=is_hard_regime(spec.d),
    )


def execute_run(spec: RunSpec, spec_index: int, rep: int, bounds: BoundsTable) -> BenchRecord:
    """One (spec, repetition). Errors become a failure record; nothing propagates."""
    base = _record_base(spec, spec_index, rep)
    instance_seed, solver_seed = base["instance_seed"], base["solver_seed"]
    gen_time = solve_time = None
    try:
        t0 = time.perf_counter()
        params = RrgParams(
            n=spec.n,
            d=spec.d,
            seed=instance_seed,
            method=spec.sampler,
            max_restarts=get_settings().max_restarts,
        )
        g = sample_rrg(params)
        gen_time = max(time.perf_counter() - t0, 1e-9)

        t0 = time.perf_counter()
        s = run_solver(g, spec.solver, solver_seed, spec.params)
        solve_time = max(time.perf_counter() - t0, 1e-9)

        if not validate_is(g, s):
            invalid = InvalidIndependentSet("solver output has adjacent members")
            return BenchRecord(
                **base,
                alpha=s.size,
                valid=False,
                gen_time_s=gen_time,
                solve_time_s=solve_time,
                error=invalid.reason,
                message=str(invalid),
            )

        ar = None
        try:
            ar = approximation_ratio(s, g.n, spec.d, bounds)
        except NoBoundForDegree:
            pass

        return BenchRecord(
            **base,
            alpha=s.size,
            density=density(s, g.n),
            ar=ar,
            ar_exceeds_bound=ar is not None and ar > 1.0,
            valid=True,
            maximal=is_maximal(g, s),
            gen_time_s=gen_time,
            solve_time_s=solve_time,
            total_time_s=gen_time + solve_time,
        )
    except MisBenchError as e:
        return BenchRecord(**base, gen_time_s=gen_time, error=e.reason, message=str(e))
    except ValueError as e:
        return BenchRecord(**base, gen_time_s=gen_time, error=type(e).__name__, message=str(e))
    except Exception as e:
        logger.exception("run %d rep %d raised", spec_index, rep)
        return BenchRecord(**base, gen_time_s=gen_time, error=type(e).__name__, message=str(e))


def _crash_record(spec: RunSpec, spec_index: int, rep: int, exc: BaseException) -> BenchRecord:
    return BenchRecord(**_record_base(spec, spec_index, rep), error=type(exc).__name__, message=str(exc))


def _execute_payload(payload: Dict[str, Any], spec_index: int, rep: int, rows: List[Dict[str, Any]]) -> str:
    spec = RunSpec.model_validate(payload)
    bounds = BoundsTable(BoundsRow.model_validate(r) for r in rows)
    return execute_run(spec, spec_index, rep, bounds).model_dump_json()


def run_benchmark(
    matrix: Sequence[RunSpec],
    *,
    bounds: Optional[BoundsTable] = None,
    sinks: Iterable[RecordSink] = (),
    workers: int = 1,
) -> List[BenchRecord]:
    """
    One record per (spec, repetition), written to every sink as soon as it
    completes. Records come back in matrix order regardless of completion order.
    """
    bounds = bounds or builtin_bounds()
    sinks = list(sinks)
    jobs = [(i, rep) for i, spec in enumerate(matrix) for rep in range(spec.repetitions)]
    done: Dict[Tuple[int, int], BenchRecord] = {}

    def accept(key: Tuple[int, int], record: BenchRecord) -> None:
        done[key] = record
        for sink in sinks:
            sink.write(record)
        if record.error:
            logger.warning("run %s rep %d failed: %s", key[0], key[1], record.message)
        logger.debug("%d/%d runs finished", len(done), len(jobs))

    logger.info("running %d specs, %d runs, %d worker(s)", len(matrix), len(jobs), workers)
    if workers <= 1:
        for i, rep in jobs:
            accept((i, rep), execute_run(matrix[i], i, rep, bounds))
    else:
        rows = [row.model_dump() for row in bounds.rows()]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(_execute_payload, matrix[i].model_dump(), i, rep, rows): (i, rep)
                for i, rep in jobs
            }
            for fut in as_completed(futures):
                i, rep = futures[fut]
                try:
                    record = BenchRecord.model_validate_json(fut.result())
                except Exception as e:
                    # worker process died before returning a record
                    record = _crash_record(matrix[i], i, rep, e)
                accept((i, rep), record)

    return [done[key] for key in sorted(done)]


# ---------- scaling ----------

def fit_scaling(records: Iterable[BenchRecord]) -> ScalingFit:
    """Least squares of log(median solver time) on log n over accepted records."""
    ok = [r for r in records if r.accepted and r.solve_time_s]
    groups = {(r.solver, r.d) for r in ok}
    if len(groups) > 1:
        raise ValueError(f"records mix solver/degree groups: {sorted(groups)}")

    by_n: Dict[int, List[float]] = {}
    for r in ok:
        by_n.setdefault(r.n, []).append(r.solve_time_s)
    if len(by_n) < 3:
        raise InsufficientPoints(len(by_n))

    ns = sorted(by_n)
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray([median(by_n[n]) for n in ns]))
    slope, intercept = np.polyfit(x, y, 1)

    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(residual**2)) / total if total > 0 else 1.0

    solver, d = next(iter(groups))
    return ScalingFit(
        solver=solver,
        d=d,
        exponent=float(slope),
        prefactor=float(np.exp(intercept)),
        r_squared=r_squared,
        n_min=ns[0],
        n_max=ns[-1],
        points=len(ns),
    )
