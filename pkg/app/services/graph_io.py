# app/services/graph_io.py
from typing import Iterable, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.errors import (
    DuplicateEdge,
    EdgeCountMismatch,
    InvalidVertexCount,
    MalformedHeader,
    MalformedLine,
    SelfLoop,
    UnknownFormat,
    VertexOutOfRange,
)
from app.models.graph import Graph, ValidationReport

GraphFormat = Literal["edge-list", "dimacs"]
GRAPH_FORMATS = ("edge-list", "dimacs")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


# ---------- construction ----------

def build_graph(n: int, edges: Union[np.ndarray, Iterable[Sequence[int]]]) -> Graph:
    """
    Canonical graph from a vertex count and a list of unordered pairs.

    Self-loops, repeated pairs (in either orientation) and out-of-range
    endpoints are errors, never silently dropped.
    """
    if n < 1:
        raise InvalidVertexCount(n)

    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be a sequence of pairs")

    bad = (arr < 0) | (arr >= n)
    if bad.any():
        raise VertexOutOfRange(int(arr[bad][0]), n)

    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        raise SelfLoop(int(arr[loops][0, 0]))

    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = lo * n + hi
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    dup = np.flatnonzero(keys[1:] == keys[:-1])
    if dup.size:
        k = int(keys[dup[0]])
        raise DuplicateEdge(k // n, k % n)

    canon = np.column_stack((lo[order], hi[order]))

    src = np.concatenate((canon[:, 0], canon[:, 1]))
    dst = np.concatenate((canon[:, 1], canon[:, 0]))
    adj_order = np.lexsort((dst, src))
    neighbors = dst[adj_order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])

    return Graph(
        n=int(n),
        edges=_readonly(canon),
        offsets=_readonly(offsets),
        neighbors=_readonly(neighbors),
    )


def validate_graph(g: Graph, expected_degree: Optional[int] = None) -> ValidationReport:
    degrees = g.degrees
    values, counts = np.unique(degrees, return_counts=True)
    histogram = {int(k): int(c) for k, c in zip(values, counts)}

    if expected_degree is not None:
        deviating = np.flatnonzero(degrees != expected_degree).tolist()
        regular = expected_degree if not deviating else None
        return ValidationReport(
            is_simple=True,
            is_regular=regular,
            degree_histogram=histogram,
            deviating_vertices=deviating,
        )

    regular = int(values[0]) if len(values) == 1 else None
    return ValidationReport(is_simple=True, is_regular=regular, degree_histogram=histogram)


# ---------- text formats ----------

def _lines(data: Union[bytes, str]) -> Iterable[Tuple[int, str]]:
    text = data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield lineno, line


def _parse_pair(lineno: int, line: str, fields: Sequence[str]) -> Tuple[int, int]:
    try:
        return int(fields[0]), int(fields[1])
    except (ValueError, IndexError):
        raise MalformedLine(lineno, line) from None


def _parse_edge_list(data: Union[bytes, str]) -> Graph:
    lines = iter(_lines(data))
    header = next(lines, None)
    if header is None:
        raise MalformedHeader("")
    fields = header[1].split()
    if len(fields) != 2:
        raise MalformedHeader(header[1])
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise MalformedHeader(header[1]) from None

    edges = []
    for lineno, line in lines:
        fields = line.split()
        if len(fields) != 2:
            raise MalformedLine(lineno, line)
        edges.append(_parse_pair(lineno, line, fields))

    if len(edges) != m:
        raise EdgeCountMismatch(m, len(edges))
    return build_graph(n, edges)


def _parse_dimacs(data: Union[bytes, str]) -> Graph:
    n = m = None
    edges = []
    for lineno, line in _lines(data):
        fields = line.split()
        tag = fields[0].lower()
        if tag == "c":
            continue
        if tag == "p":
            if n is not None or len(fields) != 4 or fields[1].lower() not in ("edge", "col"):
                raise MalformedHeader(line)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise MalformedHeader(line) from None
            continue
        if tag == "e":
            if n is None:
                raise MalformedHeader(line)
            if len(fields) != 3:
                raise MalformedLine(lineno, line)
            u, v = _parse_pair(lineno, line, fields[1:])
            edges.append((u - 1, v - 1))
            continue
        raise MalformedLine(lineno, line)

    if n is None:
        raise MalformedHeader("")
    if len(edges) != m:
        raise EdgeCountMismatch(m, len(edges))
    return build_graph(n, edges)


def parse_graph(data: Union[bytes, str], fmt: str = "edge-list") -> Graph:
    if fmt == "edge-list":
        return _parse_edge_list(data)
    if fmt == "dimacs":
        return _parse_dimacs(data)
    raise UnknownFormat(fmt)


def serialize_graph(g: Graph, fmt: str = "edge-list") -> bytes:
    pairs = g.edges.tolist()
    if fmt == "edge-list":
        head = f"{g.n} {g.m}"
        body = [f"{u} {v}" for u, v in pairs]
    elif fmt == "dimacs":
        head = f"p edge {g.n} {g.m}"
        body = [f"e {u + 1} {v + 1}" for u, v in pairs]
    else:
        raise UnknownFormat(fmt)
    return ("\n".join([head, *body]) + "\n").encode("ascii")
