# app/services/mcmc.py
"""
Hard-core model Monte Carlo: Metropolis sweeps, simulated annealing in the
chemical potential mu, and parallel tempering over a ladder of potentials.

States are always independent sets; inserting next to an occupied vertex is
never proposed as a legal move.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np

from app.core.rng import make_rng, spawn_rngs
from app.models.graph import Graph
from app.models.independent_set import IndependentSet
from app.models.mcmc import AnnealSchedule, HardCoreState, PtConfig, PtStats, Scan

logger = logging.getLogger(__name__)


def color_classes(g: Graph) -> List[np.ndarray]:
    """Vertex classes of a greedy proper colouring; each class is an independent set."""
    coloring = nx.coloring.greedy_color(g.to_networkx(), strategy="largest_first")
    colors = np.fromiter((coloring[v] for v in range(g.n)), dtype=np.int64, count=g.n)
    order = np.argsort(colors, kind="stable")
    splits = np.flatnonzero(np.diff(colors[order])) + 1
    return np.split(order, splits)


class HardCoreChain:
    """
    One Markov chain's working state on a fixed graph.

    ``random`` scan: n proposals at uniformly drawn vertices, Metropolis rule.
    ``colored`` scan: heat-bath update of every unblocked vertex, one colour
    class at a time in random order; vertices in a class share no edge, so
    the class is updated as one vectorized step.
    """

    def __init__(
        self,
        g: Graph,
        rng: np.random.Generator,
        scan: Scan = "random",
        classes: Optional[List[np.ndarray]] = None,
    ) -> None:
        self.g = g
        self.rng = rng
        self.scan = scan
        if scan == "random":
            self._off = g.offsets.tolist()
            self._nbr = g.neighbors.tolist()
        else:
            self._classes = classes if classes is not None else color_classes(g)
            self._deg = g.degrees

    def sweep(self, state: HardCoreState, mu: float) -> int:
        if self.g.n == 0:
            return 0
        if self.scan == "random":
            return self._random_sweep(state, mu)
        return self._colored_sweep(state, mu)

    def _random_sweep(self, state: HardCoreState, mu: float) -> int:
        n = self.g.n
        off, nbr = self._off, self._nbr
        occ, blk = state.occupied, state.blocked
        p_delete = math.exp(-mu)
        vertices = self.rng.integers(0, n, size=n).tolist()
        draws = self.rng.random(n).tolist()

        accepted = 0
        for v, u in zip(vertices, draws):
            if occ[v]:
                if u < p_delete:
                    occ[v] = False
                    for w in nbr[off[v]:off[v + 1]]:
                        blk[w] -= 1
                    state.size -= 1
                    accepted += 1
            elif blk[v] == 0:
                occ[v] = True
                for w in nbr[off[v]:off[v + 1]]:
                    blk[w] += 1
                state.size += 1
                accepted += 1
        return accepted

    def _gather(self, vertices: np.ndarray) -> np.ndarray:
        counts = self._deg[vertices]
        total = int(counts.sum())
        if total == 0:
            return np.empty(0, dtype=np.int64)
        starts = self.g.offsets[vertices]
        base = np.repeat(starts - np.cumsum(counts) + counts, counts)
        return self.g.neighbors[base + np.arange(total)]

    def _colored_sweep(self, state: HardCoreState, mu: float) -> int:
        n = self.g.n
        p_occupy = 1.0 / (1.0 + math.exp(-mu))
        changed = 0
        for c in self.rng.permutation(len(self._classes)):
            cls = self._classes[c]
            free = cls[state.blocked[cls] == 0]
            if free.size == 0:
                continue
            want = self.rng.random(free.size) < p_occupy
            was = state.occupied[free]
            inserted = free[want & ~was]
            deleted = free[~want & was]
            if inserted.size:
                state.occupied[inserted] = True
                state.blocked += np.bincount(self._gather(inserted), minlength=n).astype(np.int32)
            if deleted.size:
                state.occupied[deleted] = False
                state.blocked -= np.bincount(self._gather(deleted), minlength=n).astype(np.int32)
            state.size += int(inserted.size) - int(deleted.size)
            changed += int(inserted.size + deleted.size)
        return changed


def mcmc_sweep(
    state: HardCoreState,
    g: Graph,
    mu: float,
    rng: np.random.Generator,
    scan: Scan = "random",
) -> Tuple[HardCoreState, int]:
    """One sweep (n proposals) at potential mu; the state is updated in place and returned."""
    if mu < 0:
        raise ValueError(f"chemical potential must be >= 0, got {mu}")
    accepted = HardCoreChain(g, rng, scan).sweep(state, mu)
    return state, accepted


def simulated_annealing(
    g: Graph,
    schedule: AnnealSchedule,
    seed: int,
    *,
    checkpoints: Optional[List[int]] = None,
) -> IndependentSet:
    """Anneal mu along the schedule from the empty set; return the largest set seen."""
    chain = HardCoreChain(g, make_rng(seed), schedule.scan)
    state = HardCoreState.empty(g.n)
    best = state.occupied.copy()
    best_size = 0

    for k in range(schedule.sweeps):
        chain.sweep(state, schedule.mu_at(k))
        if state.size > best_size:
            best_size = state.size
            best = state.occupied.copy()
        if schedule.audit_every and k % schedule.audit_every == 0:
            state.audit(g)
        if checkpoints is not None:
            checkpoints.append(best_size)

    logger.debug("SA n=%d sweeps=%d best=%d", g.n, schedule.sweeps, best_size)
    return IndependentSet.from_vertices(np.flatnonzero(best).tolist())


def swap_acceptance(mu_i: float, mu_j: float, size_i: int, size_j: int) -> float:
    """Probability of exchanging the configurations held at potentials mu_i and mu_j."""
    exponent = (mu_i - mu_j) * (size_j - size_i)
    return 1.0 if exponent >= 0 else math.exp(exponent)


def _swap_accepted(mu_i: float, mu_j: float, size_i: int, size_j: int, rng: np.random.Generator) -> bool:
    p = swap_acceptance(mu_i, mu_j, size_i, size_j)
    return p >= 1.0 or rng.random() < p


def parallel_tempering(
    g: Graph,
    config: PtConfig,
    seed: int,
    *,
    stats: Optional[PtStats] = None,
    checkpoints: Optional[List[int]] = None,
) -> IndependentSet:
    """
    Replicas at ascending potentials, each advanced ``sweeps_per_round``
    sweeps, then neighbouring pairs (even pairs on even rounds, odd pairs on
    odd rounds) exchange configurations by the Metropolis swap rule.
    """
    mus = config.potentials
    replicas = len(mus)
    rngs = spawn_rngs(seed, replicas + 1)
    swap_rng = rngs[-1]
    classes = color_classes(g) if config.scan == "colored" else None
    chains = [HardCoreChain(g, rngs[i], config.scan, classes) for i in range(replicas)]
    states = [HardCoreState.empty(g.n) for _ in range(replicas)]

    if stats is not None:
        stats.attempts = [0] * (replicas - 1)
        stats.accepts = [0] * (replicas - 1)

    best = states[0].occupied.copy()
    best_size = 0

    def advance(i: int) -> None:
        for _ in range(config.sweeps_per_round):
            chains[i].sweep(states[i], mus[i])

    pool = ThreadPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        for r in range(config.rounds):
            if pool is None:
                for i in range(replicas):
                    advance(i)
            else:
                list(pool.map(advance, range(replicas)))

            for st in states:
                if st.size > best_size:
                    best_size = st.size
                    best = st.occupied.copy()

            for i in range(r % 2, replicas - 1, 2):
                accepted = _swap_accepted(mus[i], mus[i + 1], states[i].size, states[i + 1].size, swap_rng)
                if stats is not None:
                    stats.attempts[i] += 1
                    stats.accepts[i] += int(accepted)
                if accepted:
                    states[i], states[i + 1] = states[i + 1], states[i]

            if config.audit_every and r % config.audit_every == 0:
                for st in states:
                    st.audit(g)
            if checkpoints is not None:
                checkpoints.append(best_size)
    finally:
        if pool is not None:
            pool.shutdown()

    logger.debug("PT n=%d replicas=%d rounds=%d best=%d", g.n, replicas, config.rounds, best_size)
    return IndependentSet.from_vertices(np.flatnonzero(best).tolist())
