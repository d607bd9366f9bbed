# tests/test_mcmc.py
import math
import statistics
from collections import Counter

import pytest
from pydantic import ValidationError

from app.core.config import get_settings
from app.core.rng import make_rng
from app.models.graph import RrgParams
from app.models.independent_set import IndependentSet
from app.models.mcmc import AnnealSchedule, HardCoreState, PtConfig, PtStats
from app.services.graph_io import build_graph
from app.services.greedy import exact_mis, validate_is
from app.services.mcmc import (
    HardCoreChain,
    color_classes,
    mcmc_sweep,
    parallel_tempering,
    simulated_annealing,
    swap_acceptance,
)
from app.services.rrg import sample_rrg
from app.services.solvers import anneal_schedule, pt_config, run_solver
from tests.helpers import cycle, independent_sets, path


# ---------- sweeps ----------

def test_high_potential_fills_an_edgeless_graph():
    g = build_graph(10, [])
    rng = make_rng(0)
    state = HardCoreState.empty(g.n)
    for _ in range(30):
        state, _ = mcmc_sweep(state, g, 25.0, rng)
    assert state.size == 10
    assert state.occupied.all()


def test_sweep_rejects_negative_potential(triangle):
    with pytest.raises(ValueError):
        mcmc_sweep(HardCoreState.empty(3), triangle, -0.5, make_rng(0))


@pytest.mark.parametrize("scan", ["random", "colored"])
def test_sweep_keeps_bookkeeping_consistent(scan):
    g = sample_rrg(RrgParams(n=60, d=3, seed=1))
    chain = HardCoreChain(g, make_rng(2), scan)
    state = HardCoreState.empty(g.n)
    for k in range(200):
        chain.sweep(state, 0.05 * k)
        state.audit(g)


def test_audit_detects_corruption(triangle):
    state = HardCoreState.from_members(triangle, IndependentSet.from_vertices([0]))
    state.audit(triangle)
    state.size = 2
    with pytest.raises(AssertionError):
        state.audit(triangle)


def test_color_classes_are_independent_and_cover_the_graph():
    g = sample_rrg(RrgParams(n=80, d=4, seed=3))
    classes = color_classes(g)
    covered = sorted(int(v) for cls in classes for v in cls)
    assert covered == list(range(g.n))
    for cls in classes:
        assert validate_is(g, IndependentSet.from_vertices(cls.tolist()))


def _occupation_frequencies(g, mu, scan, sweeps, seed=0):
    chain = HardCoreChain(g, make_rng(seed), scan)
    state = HardCoreState.empty(g.n)
    for _ in range(200):
        chain.sweep(state, mu)
    counts = Counter()
    for _ in range(sweeps):
        chain.sweep(state, mu)
        counts[tuple(state.occupied.nonzero()[0].tolist())] += 1
    return {k: c / sweeps for k, c in counts.items()}


@pytest.mark.parametrize("scan", ["random", "colored"])
def test_zero_potential_is_uniform_on_triangle(triangle, scan):
    freq = _occupation_frequencies(triangle, 0.0, scan, 20_000)
    for s in independent_sets(triangle):
        assert abs(freq.get(s.members, 0.0) - 0.25) < 0.02


@pytest.mark.parametrize("scan", ["random", "colored"])
def test_stationary_law_on_small_path(scan):
    g = path(5)
    mu = 1.0
    sets = independent_sets(g)
    z = sum(math.exp(mu * s.size) for s in sets)
    freq = _occupation_frequencies(g, mu, scan, 40_000, seed=7)
    for s in sets:
        assert abs(freq.get(s.members, 0.0) - math.exp(mu * s.size) / z) < 0.02


# ---------- simulated annealing ----------

def test_sa_without_sweeps_returns_empty_set():
    schedule = AnnealSchedule(mu_start=0.0, mu_end=5.0, sweeps=0)
    assert simulated_annealing(cycle(6), schedule, seed=0).size == 0


def test_sa_finds_hexagon_optimum():
    schedule = AnnealSchedule(mu_start=0.0, mu_end=5.0, sweeps=1000)
    s = simulated_annealing(cycle(6), schedule, seed=1)
    assert s.size == 3
    assert validate_is(cycle(6), s)


@pytest.mark.parametrize("scan", ["random", "colored"])
def test_sa_checkpoints_are_monotone(scan):
    g = sample_rrg(RrgParams(n=100, d=3, seed=5))
    schedule = AnnealSchedule(mu_start=0.0, mu_end=6.0, sweeps=300, scan=scan, audit_every=25)
    checkpoints = []
    s = simulated_annealing(g, schedule, seed=3, checkpoints=checkpoints)
    assert len(checkpoints) == 300
    assert all(a <= b for a, b in zip(checkpoints, checkpoints[1:]))
    assert checkpoints[-1] == s.size
    assert validate_is(g, s)


def test_sa_is_deterministic():
    g = sample_rrg(RrgParams(n=100, d=3, seed=6))
    schedule = AnnealSchedule(mu_start=0.0, mu_end=6.0, sweeps=200)
    assert simulated_annealing(g, schedule, 9) == simulated_annealing(g, schedule, 9)


def _sa_hits(seeds):
    hits = 0
    for seed in range(seeds):
        g = sample_rrg(RrgParams(n=16, d=3, seed=seed))
        schedule = AnnealSchedule(mu_start=0.0, mu_end=8.0, sweeps=2000)
        hits += simulated_annealing(g, schedule, seed).size == exact_mis(g).size
    return hits


def test_sa_reaches_the_optimum_on_small_cubic_graphs():
    assert _sa_hits(10) >= 8


@pytest.mark.bench
def test_sa_reaches_the_optimum_on_small_cubic_graphs_at_scale():
    assert _sa_hits(100) >= 95


def test_schedule_ramps():
    linear = AnnealSchedule(mu_start=0.0, mu_end=10.0, sweeps=11)
    assert linear.mu_at(0) == 0.0
    assert linear.mu_at(5) == pytest.approx(5.0)
    assert linear.mu_at(10) == pytest.approx(10.0)
    geometric = AnnealSchedule(mu_start=1.0, mu_end=100.0, sweeps=3, ramp="geometric")
    assert [geometric.mu_at(k) for k in range(3)] == pytest.approx([1.0, 10.0, 100.0])


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(mu_start=2.0, mu_end=1.0),
        dict(mu_start=-1.0, mu_end=1.0),
        dict(mu_start=0.0, mu_end=1.0, ramp="geometric"),
        dict(sweeps=-1),
    ],
)
def test_schedule_validation(kwargs):
    with pytest.raises(ValidationError):
        AnnealSchedule(**kwargs)


# ---------- parallel tempering ----------

def test_swap_acceptance():
    assert swap_acceptance(2.0, 2.0, 3, 7) == 1.0
    assert swap_acceptance(1.0, 2.0, 5, 3) == 1.0
    assert swap_acceptance(1.0, 2.0, 3, 5) == pytest.approx(math.exp(-2.0))


def test_swap_rule_is_symmetric_in_replica_labels():
    for mu_i, mu_j, a, b in [(0.5, 2.0, 3, 5), (1.0, 4.0, 9, 2), (2.0, 2.5, 4, 4)]:
        assert swap_acceptance(mu_i, mu_j, a, b) == swap_acceptance(mu_j, mu_i, b, a)
        forward = swap_acceptance(mu_i, mu_j, a, b)
        backward = swap_acceptance(mu_i, mu_j, b, a)
        assert forward / backward == pytest.approx(math.exp((mu_i - mu_j) * (b - a)))


def _pt_best_sizes(g, seeds):
    config = PtConfig(potentials=[0.5, 1.5, 3.0], rounds=2)
    return [parallel_tempering(g, config, seed=s).size for s in seeds]


def _same_mean(a, b):
    var = (statistics.pvariance(a) + statistics.pvariance(b)) / len(a)
    return abs(statistics.mean(a) - statistics.mean(b)) <= 4 * math.sqrt(var)


def test_pt_best_size_law_is_label_symmetric():
    g = sample_rrg(RrgParams(n=20, d=3, seed=12))
    perm = make_rng(5).permutation(g.n)
    relabelled = build_graph(g.n, [(int(perm[u]), int(perm[v])) for u, v in g.edge_list()])

    base = _pt_best_sizes(g, range(300))
    assert _same_mean(base, _pt_best_sizes(g, range(1000, 1300)))
    assert _same_mean(base, _pt_best_sizes(relabelled, range(300)))


def test_pt_finds_hexagon_optimum():
    config = PtConfig(potentials=[0.5, 1.0, 2.0, 4.0], rounds=500)
    stats = PtStats()
    s = parallel_tempering(cycle(6), config, seed=0, stats=stats)
    assert s.size == 3
    assert stats.attempts == [250, 250, 250]
    assert all(0.0 <= stats.acceptance_ratio(i) <= 1.0 for i in range(3))


@pytest.mark.parametrize("scan", ["random", "colored"])
def test_pt_thread_pool_matches_sequential(scan):
    g = sample_rrg(RrgParams(n=60, d=3, seed=8))
    kwargs = dict(potentials=[0.5, 1.0, 2.0, 4.0], rounds=100, scan=scan, audit_every=10)
    one = parallel_tempering(g, PtConfig(workers=1, **kwargs), seed=4)
    two = parallel_tempering(g, PtConfig(workers=2, **kwargs), seed=4)
    assert one == two
    assert validate_is(g, one)


def test_pt_checkpoints_are_monotone():
    g = sample_rrg(RrgParams(n=60, d=3, seed=9))
    checkpoints = []
    parallel_tempering(g, PtConfig(potentials=[1.0, 3.0], rounds=50), seed=0, checkpoints=checkpoints)
    assert len(checkpoints) == 50
    assert all(a <= b for a, b in zip(checkpoints, checkpoints[1:]))


def test_geometric_ladder():
    config = PtConfig.geometric(0.5, 8.0, 5, rounds=10)
    assert config.potentials == pytest.approx([0.5, 1.0, 2.0, 4.0, 8.0])
    assert config.rounds == 10


@pytest.mark.parametrize("potentials", [[1.0], [1.0, 1.0], [2.0, 1.0], [-1.0, 1.0]])
def test_ladder_validation(potentials):
    with pytest.raises(ValidationError):
        PtConfig(potentials=potentials)


@pytest.mark.parametrize(
    "mu_min,mu_max,replicas",
    [(0.5, 12.0, 1), (0.5, 12.0, 0), (0.0, 12.0, 8), (-1.0, 12.0, 4), (4.0, 2.0, 4)],
)
def test_geometric_ladder_rejects_bad_parameters(mu_min, mu_max, replicas):
    with pytest.raises(ValueError):
        PtConfig.geometric(mu_min, mu_max, replicas)


# ---------- dispatch ----------

def test_settings_supply_mcmc_defaults(monkeypatch):
    monkeypatch.setenv("MISBENCH_SA_SWEEPS", "7")
    monkeypatch.setenv("MISBENCH_PT_REPLICAS", "3")
    monkeypatch.setenv("MISBENCH_MCMC_SCAN", "random")
    get_settings.cache_clear()

    schedule = anneal_schedule({})
    assert schedule.sweeps == 7
    assert schedule.scan == "random"
    assert anneal_schedule({"sweeps": 9}).sweeps == 9

    config = pt_config({"rounds": 5})
    assert len(config.potentials) == 3
    assert config.rounds == 5
    assert pt_config({"potentials": [1.0, 2.0]}).potentials == [1.0, 2.0]


@pytest.mark.parametrize("solver", ["ga", "dga", "sa", "pt", "exact"])
def test_run_solver_dispatch(solver):
    g = cycle(8)
    params = {"sweeps": 200, "rounds": 100, "replicas": 3}
    s = run_solver(g, solver, 1, params)
    assert validate_is(g, s)
    assert 3 <= s.size <= 4


def test_run_solver_unknown_id(triangle):
    with pytest.raises(ValueError):
        run_solver(triangle, "tabu", 0)


@pytest.mark.parametrize("params", [{"replicas": 1}, {"mu_min": 0.0}])
def test_run_solver_rejects_degenerate_ladder(triangle, params):
    with pytest.raises(ValueError):
        run_solver(triangle, "pt", 0, params)
