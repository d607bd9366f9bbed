# app/models/graph.py
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Literal, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Immutable simple undirected graph in compressed adjacency form.

    ``edges`` holds each edge once as (u, v) with u < v, rows sorted
    lexicographically. ``offsets``/``neighbors`` are the CSR view: the
    neighbours of v are ``neighbors[offsets[v]:offsets[v + 1]]``, ascending.
    Build instances with ``app.services.graph_io.build_graph``.
    """

    n: int
    edges: np.ndarray
    offsets: np.ndarray
    neighbors: np.ndarray

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def edge_list(self) -> List[tuple]:
        return [tuple(e) for e in self.edges.tolist()]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges.tolist())
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class ValidationReport(BaseModel):
    is_simple: bool
    is_regular: Optional[int] = None
    degree_histogram: Dict[int, int]
    deviating_vertices: List[int] = Field(default_factory=list)


class RrgParams(BaseModel):
    n: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    max_restarts: int = Field(10**6, ge=1)
    method: Literal["configuration", "steger-wormald"] = "configuration"
