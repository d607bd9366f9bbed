# app/core/errors.py
"""
Domain errors. Each carries a stable ``reason`` code (the class name) which is
what failure records, HTTP bodies and CLI messages report.
"""
from typing import Optional


class MisBenchError(Exception):
    def __init__(self, message: str = "") -> None:
        super().__init__(message or self.reason)

    @property
    def reason(self) -> str:
        return type(self).__name__


# ---------- graph construction / parsing ----------

class GraphError(MisBenchError):
    pass


class SelfLoop(GraphError):
    def __init__(self, u: int) -> None:
        self.u = u
        super().__init__(f"self-loop on vertex {u}")


class DuplicateEdge(GraphError):
    def __init__(self, u: int, v: int) -> None:
        self.u, self.v = u, v
        super().__init__(f"edge ({u}, {v}) listed more than once")


class VertexOutOfRange(GraphError):
    def __init__(self, v: int, n: int) -> None:
        self.v, self.n = v, n
        super().__init__(f"vertex {v} outside [0, {n})")


class InvalidVertexCount(GraphError):
    def __init__(self, n: int) -> None:
        super().__init__(f"vertex count must be positive, got {n}")


class MalformedHeader(GraphError):
    def __init__(self, line: str) -> None:
        super().__init__(f"malformed header: {line!r}")


class MalformedLine(GraphError):
    def __init__(self, lineno: int, line: str) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: cannot parse {line!r}")


class EdgeCountMismatch(GraphError):
    def __init__(self, expected: int, found: int) -> None:
        self.expected, self.found = expected, found
        super().__init__(f"header declares {expected} edges, found {found}")


# ---------- sampling ----------

class SamplerError(MisBenchError):
    pass


class InfeasibleParity(SamplerError):
    def __init__(self, n: int, d: int) -> None:
        super().__init__(f"n*d = {n}*{d} is odd, no {d}-regular graph on {n} vertices")


class DegreeTooLarge(SamplerError):
    def __init__(self, n: int, d: int) -> None:
        super().__init__(f"degree {d} must be smaller than n = {n}")


class RestartLimitExceeded(SamplerError):
    def __init__(self, attempts: int, guidance: Optional[str] = None) -> None:
        self.attempts = attempts
        msg = f"no simple graph after {attempts} configuration-model attempts"
        if guidance:
            msg = f"{msg}; {guidance}"
        super().__init__(msg)


# ---------- solvers / bounds / harness ----------

class TooLarge(MisBenchError):
    def __init__(self, n: int, limit: int) -> None:
        self.n, self.limit = n, limit
        super().__init__(f"n = {n} exceeds the limit of {limit}")


class InvalidIndependentSet(MisBenchError):
    pass


class NoBoundForDegree(MisBenchError):
    def __init__(self, d: int) -> None:
        self.d = d
        super().__init__(f"no rho_ub tabulated for d = {d}")


class InsufficientPoints(MisBenchError):
    def __init__(self, found: int) -> None:
        super().__init__(f"scaling fit needs at least 3 distinct n, got {found}")


class UnknownFormat(MisBenchError):
    def __init__(self, fmt: str) -> None:
        super().__init__(f"unknown format {fmt!r}")


class ConfigError(MisBenchError):
    pass


class MalformedRecord(MisBenchError):
    def __init__(self, lineno: int, detail: str) -> None:
        self.lineno = lineno
        super().__init__(f"record line {lineno}: {detail}")
