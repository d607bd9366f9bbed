# app/services/greedy.py
"""
Greedy independent sets (GA, DGA), IS checks and the exact small-graph oracle.
"""
from typing import Iterator, List, Optional, Union

import numpy as np

from app.core.errors import TooLarge, VertexOutOfRange
from app.core.rng import make_rng
from app.models.graph import Graph
from app.models.independent_set import GreedyTrace, IndependentSet
from app.services.bucket_queue import BucketQueue

EXACT_LIMIT = 40


# ---------- checks ----------

def _membership(g: Graph, s: IndependentSet) -> np.ndarray:
    members = np.asarray(s.members, dtype=np.int64)
    bad = (members < 0) | (members >= g.n)
    if bad.any():
        raise VertexOutOfRange(int(members[bad][0]), g.n)
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    return mask


def validate_is(g: Graph, s: IndependentSet) -> bool:
    mask = _membership(g, s)
    return not bool(np.any(mask[g.edges[:, 0]] & mask[g.edges[:, 1]]))


def is_maximal(g: Graph, s: IndependentSet) -> bool:
    """True when every vertex outside s has a neighbour inside s."""
    mask = _membership(g, s)
    covered = mask.copy()
    u, v = g.edges[:, 0], g.edges[:, 1]
    covered[v[mask[u]]] = True
    covered[u[mask[v]]] = True
    return bool(covered.all())


# ---------- greedy solvers ----------

def greedy_random(g: Graph, seed: int, *, trace: Optional[GreedyTrace] = None) -> IndependentSet:
    """
    GA: a uniform random permutation scanned once. A vertex is taken when no
    earlier pick blocked it, which has the law of repeated uniform picks from
    the residual graph.
    """
    rng = make_rng(seed)
    off = g.offsets.tolist()
    nbr = g.neighbors.tolist()
    blocked = bytearray(g.n)
    chosen: List[int] = []

    for v in rng.permutation(g.n).tolist():
        if blocked[v]:
            continue
        adj = nbr[off[v]:off[v + 1]]
        if trace is not None:
            trace.record(v, sum(1 for u in adj if not blocked[u]))
        chosen.append(v)
        blocked[v] = 1
        for u in adj:
            blocked[u] = 1

    return IndependentSet.from_vertices(chosen, trace=trace)


def greedy_min_degree(
    g: Graph,
    seed: int,
    *,
    trace: Optional[GreedyTrace] = None,
    audit: bool = False,
) -> IndependentSet:
    """
    DGA: repeatedly take a vertex of minimum residual degree (ties uniform at
    random), delete it and its neighbours, and move every surviving vertex
    adjacent to a deleted one down a bucket.
    """
    rng = make_rng(seed)
    off = g.offsets.tolist()
    nbr = g.neighbors.tolist()
    queue = BucketQueue(g.degrees.tolist())
    live = queue.live
    draws = rng.random(g.n).tolist()
    chosen: List[int] = []

    t = 0
    while queue.size:
        v, k = queue.pop_min(draws[t])
        t += 1
        chosen.append(v)
        if trace is not None:
            trace.record(v, k)

        removed = []
        for u in nbr[off[v]:off[v + 1]]:
            if live[u]:
                queue.remove(u)
                removed.append(u)
        for u in removed:
            for w in nbr[off[u]:off[u + 1]]:
                if live[w]:
                    queue.decrement(w)

        if audit:
            queue.audit(off, nbr)

    return IndependentSet.from_vertices(chosen, trace=trace)


# ---------- exact oracle ----------

def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def exact_mis(g: Graph, limit: int = EXACT_LIMIT) -> IndependentSet:
    """
    Branch and bound over vertex bitmasks.

    Branches on a vertex of highest residual degree, exclude branch first,
    bound = current size + number of undecided vertices. Once no residual
    degree exceeds 2 the rest is paths and cycles, solved directly.
    """
    if g.n > limit:
        raise TooLarge(g.n, limit)

    adj = [0] * g.n
    for u, v in g.edges.tolist():
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    best_size = -1
    best_set = 0

    def paths_and_cycles(avail: int) -> int:
        chosen = 0
        while avail:
            pick = None
            for v in _bits(avail):
                if (adj[v] & avail).bit_count() <= 1:
                    pick = v
                    break
            if pick is None:
                pick = (avail & -avail).bit_length() - 1
            chosen |= 1 << pick
            avail &= ~((1 << pick) | adj[pick])
        return chosen

    def branch(avail: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if size + avail.bit_count() <= best_size:
            return

        vmax, dmax = -1, -1
        for v in _bits(avail):
            deg = (adj[v] & avail).bit_count()
            if deg > dmax:
                vmax, dmax = v, deg

        if dmax <= 2:
            rest = paths_and_cycles(avail)
            total = size + rest.bit_count()
            if total > best_size:
                best_size, best_set = total, chosen | rest
            return

        bit = 1 << vmax
        branch(avail & ~bit, chosen, size)
        branch(avail & ~(bit | adj[vmax]), chosen | bit, size + 1)

    branch((1 << g.n) - 1, 0, 0)
    return IndependentSet.from_vertices(_bits(best_set))


# ---------- IS text format ----------

def serialize_independent_set(s: IndependentSet) -> bytes:
    lines = [f"alpha {s.size}", *(str(v) for v in s.members)]
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_independent_set(data: Union[bytes, str]) -> IndependentSet:
    text = data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("alpha "):
        raise ValueError("IS file must start with 'alpha k'")
    k = int(lines[0].split()[1])
    members = [int(line) for line in lines[1:]]
    if len(members) != k:
        raise ValueError(f"IS header declares {k} vertices, found {len(members)}")
    return IndependentSet.from_vertices(members)
