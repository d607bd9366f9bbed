# tests/test_bench.py
import json
import math
from pathlib import Path

import pytest
from sqlalchemy import select

from app.core.config import get_settings
from app.core.db import make_engine, make_session_factory
from app.core.errors import ConfigError, InsufficientPoints, MalformedRecord
from app.models.bench import BenchConfig, BenchRecord, RunSpec
from app.models.bench_record_row import BenchRecordRow
from app.models.bounds import BoundsRow
from app.models.independent_set import IndependentSet
from app.services.bench import (
    expand_matrix,
    fit_scaling,
    hard_benchmark_matrix,
    load_bench_config,
    run_benchmark,
)
from app.services.bounds import builtin_bounds
from app.services.greedy import greedy_random
from app.services.records import DbRecordSink, JsonlRecordSink, parse_records, read_records


def _record(n, time_s, *, solver="dga", d=3, valid=True, error=None):
    return BenchRecord(
        solver=solver,
        n=n,
        d=d,
        sampler="configuration",
        instance_seed=0,
        solver_seed=0,
        alpha=n // 2,
        density=0.5,
        valid=valid,
        solve_time_s=time_s,
        error=error,
    )


# ---------- matrices ----------

def test_hard_benchmark_matrix_shape():
    matrix = hard_benchmark_matrix([10**3, 10**4, 10**5, 10**6, 10**7], seeds=1)
    assert len(matrix) == 40
    assert {spec.d for spec in matrix} == {20, 100}
    assert {spec.solver for spec in matrix} == {"ga", "dga", "sa", "pt"}
    assert all(spec.sampler == "steger-wormald" for spec in matrix)


def test_hard_benchmark_matrix_empty_n_list():
    assert hard_benchmark_matrix([], seeds=3) == []


def test_hard_benchmark_solvers_share_instances():
    matrix = hard_benchmark_matrix([1000], seeds=2, master_seed=5)
    by_cell = {}
    for spec in matrix:
        by_cell.setdefault((spec.d, spec.n, spec.instance_seed), set()).add(spec.solver)
    assert len(by_cell) == 4
    assert all(solvers == {"ga", "dga", "sa", "pt"} for solvers in by_cell.values())
    assert len({spec.solver_seed for spec in matrix}) == len(matrix)


def test_expand_matrix():
    config = BenchConfig.model_validate(
        {
            "master_seed": 3,
            "matrix": [
                {"solver": "ga", "n": [100, 200], "d": [3], "seeds": 4},
                {"solver": "dga", "n": [100], "d": [3, 5]},
            ],
            "hard_benchmark": {"n": [1000], "seeds": 1},
        }
    )
    matrix = expand_matrix(config)
    assert len(matrix) == 4 + 8
    assert matrix[0].repetitions == 4
    ga_100, dga_100 = matrix[0], matrix[2]
    assert (ga_100.n, ga_100.d, dga_100.n, dga_100.d) == (100, 3, 100, 3)
    assert ga_100.instance_seed == dga_100.instance_seed
    assert ga_100.solver_seed != dga_100.solver_seed
    assert expand_matrix(config) == matrix


def test_load_bench_config(tmp_path):
    path = tmp_path / "bench.json"
    path.write_text(json.dumps({"matrix": [{"solver": "dga", "n": [50], "d": [3]}]}))
    config = load_bench_config(path)
    assert config.matrix[0].solver == "dga"
    assert config.output.report_format == "plot-table"


@pytest.mark.parametrize(
    "content",
    [
        "{not json",
        json.dumps({"matrix": [{"solver": "tabu", "n": [50], "d": [3]}]}),
        json.dumps({"matrix": [], "unknown": 1}),
        json.dumps({"bounds": [{"d": 3, "rho_ub": 1.5}]}),
    ],
)
def test_load_bench_config_errors(tmp_path, content):
    path = tmp_path / "bench.json"
    path.write_text(content)
    with pytest.raises(ConfigError):
        load_bench_config(path)


def test_load_bench_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_bench_config(tmp_path / "absent.json")


# ---------- execution ----------

def test_dga_runs_produce_valid_records():
    spec = RunSpec(solver="dga", n=1000, d=3, instance_seed=1, solver_seed=2, repetitions=5)
    records = run_benchmark([spec])
    assert len(records) == 5
    assert [r.repetition for r in records] == list(range(5))
    assert len({r.instance_seed for r in records}) == 5
    for r in records:
        assert r.accepted
        assert r.maximal
        assert r.density == pytest.approx(r.alpha / 1000)
        assert r.ar == pytest.approx(r.density / 0.45537)
        assert not r.ar_exceeds_bound
        assert 0.40 < r.density < 0.46
        assert r.gen_time_s > 0 and r.solve_time_s > 0
        assert r.total_time_s == pytest.approx(r.gen_time_s + r.solve_time_s)
        assert r.tie_break == "uniform-random"
        assert r.rng == "numpy.PCG64"


def test_infeasible_instance_becomes_a_failure_record():
    records = run_benchmark([RunSpec(solver="dga", n=5, d=3)])
    assert len(records) == 1
    r = records[0]
    assert r.error == "InfeasibleParity"
    assert not r.valid
    assert r.alpha is None


def test_oracle_refusal_becomes_a_failure_record():
    r = run_benchmark([RunSpec(solver="exact", n=50, d=3)])[0]
    assert r.error == "TooLarge"
    assert r.gen_time_s is not None
    assert r.solve_time_s is None


def test_failures_do_not_stop_the_matrix():
    matrix = [RunSpec(solver="dga", n=5, d=3), RunSpec(solver="ga", n=40, d=3)]
    records = run_benchmark(matrix)
    assert [r.accepted for r in records] == [False, True]


def test_degree_without_bound_has_no_ratio():
    r = run_benchmark([RunSpec(solver="ga", n=60, d=4)])[0]
    assert r.accepted
    assert r.ar is None


def test_records_stream_to_jsonl(tmp_path):
    path = tmp_path / "out" / "records.jsonl"
    matrix = [RunSpec(solver="ga", n=100, d=3, repetitions=3), RunSpec(solver="dga", n=7, d=3)]
    with JsonlRecordSink(path) as sink:
        records = run_benchmark(matrix, sinks=[sink])
    assert read_records(path) == records
    assert len(path.read_text().splitlines()) == 4


def test_process_pool_matches_sequential_run():
    matrix = [
        RunSpec(solver="ga", n=200, d=3, instance_seed=4, solver_seed=5, repetitions=2),
        RunSpec(solver="dga", n=200, d=3, instance_seed=4, solver_seed=6),
        RunSpec(solver="dga", n=9, d=3),
    ]
    one = run_benchmark(matrix, workers=1)
    two = run_benchmark(matrix, workers=2)

    def strip(r):
        return r.model_dump(exclude={"gen_time_s", "solve_time_s", "total_time_s"})

    assert [strip(r) for r in one] == [strip(r) for r in two]


def test_records_mirror_into_database(tmp_path):
    engine = make_engine(f"sqlite:///{tmp_path / 'bench.db'}")
    sink = DbRecordSink(engine=engine)
    records = run_benchmark([RunSpec(solver="ga", n=50, d=3, repetitions=2)], sinks=[sink])
    sink.close()

    with make_session_factory(engine)() as session:
        rows = session.scalars(select(BenchRecordRow).order_by(BenchRecordRow.rid)).all()
        assert [row.to_record() for row in rows] == records
        assert rows[0].instance_seed == str(records[0].instance_seed)


def test_db_sink_needs_a_target():
    with pytest.raises(ValueError):
        DbRecordSink()


def test_custom_bounds_reach_the_records():
    bounds = builtin_bounds().extend([BoundsRow(d=4, rho_ub=0.42)])
    r = run_benchmark([RunSpec(solver="dga", n=60, d=4)], bounds=bounds)[0]
    assert r.ar == pytest.approx(r.density / 0.42)


# ---------- scaling ----------

@pytest.mark.parametrize("exponent", [1.0, 2.0])
def test_fit_scaling_recovers_power_law(exponent):
    records = [_record(n, 3.0 * n**exponent) for n in (100, 1000, 10_000, 100_000)]
    fit = fit_scaling(records)
    assert fit.exponent == pytest.approx(exponent, abs=1e-9)
    assert fit.prefactor == pytest.approx(3.0, rel=1e-6)
    assert fit.r_squared == pytest.approx(1.0)
    assert (fit.n_min, fit.n_max, fit.points) == (100, 100_000, 4)


def test_fit_scaling_uses_medians():
    records = [_record(n, t * n) for n in (10, 100, 1000) for t in (1.0, 2.0, 100.0)]
    assert fit_scaling(records).prefactor == pytest.approx(2.0, rel=1e-6)


def test_fit_scaling_needs_three_sizes():
    with pytest.raises(InsufficientPoints):
        fit_scaling([_record(100, 1.0), _record(1000, 10.0)])


def test_fit_scaling_ignores_rejected_records():
    records = [_record(n, float(n)) for n in (10, 100, 1000)]
    records.append(_record(10_000, 1.0, valid=False, error="InvalidIndependentSet"))
    fit = fit_scaling(records)
    assert fit.points == 3
    assert fit.exponent == pytest.approx(1.0)


def test_fit_scaling_refuses_mixed_groups():
    records = [_record(n, float(n)) for n in (10, 100, 1000)]
    records.append(_record(10, 1.0, solver="ga"))
    with pytest.raises(ValueError):
        fit_scaling(records)


def test_fit_scaling_on_measured_dga_times():
    matrix = [RunSpec(solver="dga", n=n, d=3, repetitions=3) for n in (1000, 4000, 16000)]
    fit = fit_scaling(run_benchmark(matrix))
    assert fit.points == 3
    assert math.isfinite(fit.exponent)
    assert 0.3 < fit.exponent < 2.5


@pytest.mark.parametrize("name", ["dga_scaling.json", "mcmc_reference.json", "hard_benchmark.json"])
def test_shipped_configs_load(name):
    config = load_bench_config(Path(__file__).resolve().parent.parent / "configs" / name)
    assert expand_matrix(config)


def test_hard_benchmark_config_expands_to_the_preset_matrix():
    config = load_bench_config(Path(__file__).resolve().parent.parent / "configs" / "hard_benchmark.json")
    matrix = expand_matrix(config)
    assert matrix == hard_benchmark_matrix([10_000], 3, config.master_seed, config.hard_benchmark.params)
    assert len(matrix) == 2 * 4 * 3
    assert {spec.d for spec in matrix} == {20, 100}
    assert {spec.solver for spec in matrix} == {"ga", "dga", "sa", "pt"}
    assert all(spec.params["scan"] == "colored" for spec in matrix if spec.solver in ("sa", "pt"))


def test_output_paths_default_to_settings(monkeypatch):
    monkeypatch.setenv("MISBENCH_RECORDS_PATH", "runs/all.jsonl")
    monkeypatch.setenv("MISBENCH_REPORT_PATH", "runs/all.txt")
    get_settings.cache_clear()
    config = BenchConfig.model_validate({"matrix": []})
    assert (config.output.records, config.output.report) == ("runs/all.jsonl", "runs/all.txt")


# ---------- error containment ----------

@pytest.mark.parametrize("params", [{"replicas": 1}, {"mu_min": 0.0}])
@pytest.mark.parametrize("workers", [1, 2])
def test_bad_solver_parameters_become_failure_records(params, workers):
    matrix = [RunSpec(solver="pt", n=20, d=3, params=params), RunSpec(solver="ga", n=20, d=3)]
    first, second = run_benchmark(matrix, workers=workers)
    assert first.error == "ValueError"
    assert not first.valid
    assert first.gen_time_s is not None
    assert second.accepted


def test_unexpected_solver_crash_becomes_a_failure_record(monkeypatch):
    def explode(g, solver, seed, params):
        if solver == "sa":
            raise ZeroDivisionError("float division by zero")
        return greedy_random(g, seed)

    monkeypatch.setattr("app.services.bench.run_solver", explode)
    first, second = run_benchmark([RunSpec(solver="sa", n=20, d=3), RunSpec(solver="ga", n=20, d=3)])
    assert (first.error, first.message) == ("ZeroDivisionError", "float division by zero")
    assert second.accepted


def test_invalid_solver_output_is_rejected(monkeypatch):
    monkeypatch.setattr("app.services.bench.run_solver", lambda g, *_: IndependentSet.from_vertices(range(g.n)))
    r = run_benchmark([RunSpec(solver="ga", n=20, d=3)])[0]
    assert r.error == "InvalidIndependentSet"
    assert not r.valid
    assert r.alpha == 20
    assert r.density is None


# ---------- record files ----------

def test_record_lines_must_be_utf8():
    good = _record(10, 1.0).model_dump_json().encode()
    with pytest.raises(MalformedRecord) as exc:
        parse_records(good + b"\n\xff\xfe{}\n")
    assert exc.value.lineno == 2


def test_parse_records_accepts_text_and_bytes():
    line = _record(10, 1.0).model_dump_json()
    assert parse_records(line + "\n\n") == parse_records((line + "\n").encode()) == [_record(10, 1.0)]
