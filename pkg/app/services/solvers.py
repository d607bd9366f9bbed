# app/services/solvers.py
"""Solver dispatch: id + loose parameter dict -> IndependentSet, with production defaults from Settings."""
from typing import Any, Dict, Mapping, Optional

from app.core.config import Settings, get_settings
from app.models.bench import SolverId
from app.models.graph import Graph
from app.models.independent_set import IndependentSet
from app.models.mcmc import AnnealSchedule, PtConfig
from app.services.greedy import exact_mis, greedy_min_degree, greedy_random
from app.services.mcmc import parallel_tempering, simulated_annealing

SOLVER_IDS = ("ga", "dga", "sa", "pt", "exact")


def anneal_schedule(params: Mapping[str, Any], settings: Optional[Settings] = None) -> AnnealSchedule:
    s = settings or get_settings()
    return AnnealSchedule(
        mu_start=params.get("mu_start", s.sa_mu_start),
        mu_end=params.get("mu_end", s.sa_mu_end),
        sweeps=params.get("sweeps", s.sa_sweeps),
        ramp=params.get("ramp", s.sa_ramp),
        scan=params.get("scan", s.mcmc_scan),
        audit_every=params.get("audit_every", 0),
    )


def pt_config(params: Mapping[str, Any], settings: Optional[Settings] = None) -> PtConfig:
    s = settings or get_settings()
    common: Dict[str, Any] = dict(
        sweeps_per_round=params.get("sweeps_per_round", s.pt_sweeps_per_round),
        rounds=params.get("rounds", s.pt_rounds),
        scan=params.get("scan", s.mcmc_scan),
        workers=params.get("workers", 1),
        audit_every=params.get("audit_every", 0),
    )
    if "potentials" in params:
        return PtConfig(potentials=params["potentials"], **common)
    return PtConfig.geometric(
        params.get("mu_min", s.pt_mu_min),
        params.get("mu_max", s.pt_mu_max),
        params.get("replicas", s.pt_replicas),
        **common,
    )


def run_solver(
    g: Graph,
    solver: SolverId,
    seed: int,
    params: Optional[Mapping[str, Any]] = None,
    settings: Optional[Settings] = None,
) -> IndependentSet:
    params = params or {}
    if solver == "ga":
        return greedy_random(g, seed)
    if solver == "dga":
        return greedy_min_degree(g, seed)
    if solver == "sa":
        return simulated_annealing(g, anneal_schedule(params, settings), seed)
    if solver == "pt":
        return parallel_tempering(g, pt_config(params, settings), seed)
    if solver == "exact":
        s = settings or get_settings()
        return exact_mis(g, limit=params.get("limit", s.exact_limit))
    raise ValueError(f"unknown solver {solver!r}")
