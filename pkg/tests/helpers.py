# tests/helpers.py
import itertools
from typing import List

import networkx as nx
import numpy as np

from app.models.graph import Graph
from app.models.independent_set import IndependentSet
from app.services.graph_io import build_graph


def from_networkx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return build_graph(h.number_of_nodes(), list(h.edges()))


def cycle(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete(k: int) -> Graph:
    return build_graph(k, list(itertools.combinations(range(k), 2)))


def star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_edge_set(n: int, p: float, seed: int) -> Graph:
    """Erdos-style edge set: every pair independently with probability p."""
    rng = np.random.default_rng(seed)
    pairs = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, pairs)


def independent_sets(g: Graph) -> List[IndependentSet]:
    """All independent sets of a small graph, by brute force."""
    edges = g.edge_list()
    found = []
    for mask in range(1 << g.n):
        if all(not (mask >> u & 1 and mask >> v & 1) for u, v in edges):
            found.append(IndependentSet.from_vertices(v for v in range(g.n) if mask >> v & 1))
    return found


def mis_size_networkx(g: Graph) -> int:
    """Independent oracle: maximum clique of the complement."""
    _, size = nx.max_weight_clique(nx.complement(g.to_networkx()), weight=None)
    return size
