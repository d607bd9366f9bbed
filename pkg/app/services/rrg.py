# app/services/rrg.py
"""
Random d-regular graphs.

``configuration``: pair shuffled degree stubs and restart from scratch on any
self-loop or repeated pair. Conditioning on simplicity this way is exactly
uniform over labelled simple d-regular graphs. The acceptance probability
tends to exp(-(d^2 - 1) / 4), so the method is only usable for small d.

``steger-wormald``: pairing with per-pair rejection (networkx'
``random_regular_graph``). Asymptotically uniform, and the only practical
choice for d = 20 or d = 100.
"""
import itertools
import logging
import math
from typing import List

import networkx as nx
import numpy as np

from app.core.errors import DegreeTooLarge, InfeasibleParity, RestartLimitExceeded, TooLarge
from app.core.rng import make_rng
from app.models.graph import Graph, RrgParams
from app.services.graph_io import build_graph

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 12


def _check_feasible(n: int, d: int) -> None:
    if (n * d) % 2:
        raise InfeasibleParity(n, d)
    if d >= n:
        raise DegreeTooLarge(n, d)


def expected_restarts(d: int) -> float:
    """Asymptotic mean number of configuration-model attempts per simple graph."""
    return math.exp((d * d - 1) / 4.0)


def _sample_configuration(params: RrgParams) -> Graph:
    n, d = params.n, params.d
    if expected_restarts(d) > params.max_restarts:
        raise RestartLimitExceeded(
            0,
            f"about {expected_restarts(d):.3g} attempts expected for d={d}; "
            "use method 'steger-wormald' for large degrees",
        )

    rng = make_rng(params.seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)

    for attempt in range(1, params.max_restarts + 1):
        perm = rng.permutation(stubs)
        a, b = perm[0::2], perm[1::2]
        if np.any(a == b):
            continue
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        keys = np.sort(lo * n + hi)
        if np.any(keys[1:] == keys[:-1]):
            continue
        if attempt > 1:
            logger.debug("configuration model n=%d d=%d accepted after %d attempts", n, d, attempt)
        return build_graph(n, np.column_stack((lo, hi)))

    raise RestartLimitExceeded(
        params.max_restarts,
        "increase max_restarts or use method 'steger-wormald'",
    )


def _sample_steger_wormald(params: RrgParams) -> Graph:
    rng = make_rng(params.seed)
    nx_seed = int(rng.integers(0, 2**32))
    h = nx.random_regular_graph(params.d, params.n, seed=nx_seed)
    return build_graph(params.n, list(h.edges()))


def sample_rrg(params: RrgParams) -> Graph:
    _check_feasible(params.n, params.d)
    if params.method == "steger-wormald":
        return _sample_steger_wormald(params)
    return _sample_configuration(params)


def enumerate_regular(n: int, d: int) -> List[Graph]:
    """
    Every labelled simple d-regular graph on n vertices, sorted by edge list.

    Vertices are completed in increasing order: the lowest vertex with
    remaining degree picks its missing neighbours among higher vertices, so
    each graph is produced exactly once.
    """
    if n > ENUMERATION_LIMIT:
        raise TooLarge(n, ENUMERATION_LIMIT)
    _check_feasible(n, d)

    residual = [d] * n
    found: List[tuple] = []
    edges: List[tuple] = []

    def extend(u: int) -> None:
        while u < n and residual[u] == 0:
            u += 1
        if u == n:
            found.append(tuple(edges))
            return
        need = residual[u]
        candidates = [v for v in range(u + 1, n) if residual[v] > 0]
        if need > len(candidates):
            return
        residual[u] = 0
        for combo in itertools.combinations(candidates, need):
            for v in combo:
                residual[v] -= 1
                edges.append((u, v))
            extend(u + 1)
            for v in combo:
                residual[v] += 1
                edges.pop()
        residual[u] = need

    extend(0)
    found.sort()
    return [build_graph(n, list(es)) for es in found]
