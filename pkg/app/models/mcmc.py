# app/models/mcmc.py
from dataclasses import dataclass, field
from typing import List, Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from app.models.graph import Graph
from app.models.independent_set import IndependentSet

Scan = Literal["random", "colored"]


class AnnealSchedule(BaseModel):
    mu_start: float = Field(0.0, ge=0.0)
    mu_end: float = 12.0
    sweeps: int = Field(20_000, ge=0)
    ramp: Literal["linear", "geometric"] = "linear"
    scan: Scan = "random"
    audit_every: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_range(self) -> "AnnealSchedule":
        if self.mu_end < self.mu_start:
            raise ValueError("mu_end must be >= mu_start")
        if self.ramp == "geometric" and self.mu_start <= 0.0:
            raise ValueError("a geometric ramp needs mu_start > 0")
        return self

    def mu_at(self, sweep: int) -> float:
        frac = sweep / max(self.sweeps - 1, 1)
        if self.ramp == "geometric":
            return self.mu_start * (self.mu_end / self.mu_start) ** frac
        return self.mu_start + (self.mu_end - self.mu_start) * frac


class PtConfig(BaseModel):
    potentials: List[float] = Field(..., min_length=2)
    sweeps_per_round: int = Field(1, ge=1)
    rounds: int = Field(20_000, ge=0)
    scan: Scan = "random"
    workers: int = Field(1, ge=1)
    audit_every: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_ladder(self) -> "PtConfig":
        if any(mu < 0 for mu in self.potentials):
            raise ValueError("potentials must be non-negative")
        if any(b <= a for a, b in zip(self.potentials, self.potentials[1:])):
            raise ValueError("potentials must be strictly ascending")
        return self

    @classmethod
    def geometric(cls, mu_min: float, mu_max: float, replicas: int, **kwargs) -> "PtConfig":
        if replicas < 2:
            raise ValueError(f"a ladder needs at least 2 replicas, got {replicas}")
        if mu_min <= 0.0:
            raise ValueError(f"a geometric ladder needs mu_min > 0, got {mu_min}")
        if mu_max <= mu_min:
            raise ValueError("mu_max must be > mu_min")
        ratio = (mu_max / mu_min) ** (1.0 / (replicas - 1))
        return cls(potentials=[mu_min * ratio**k for k in range(replicas)], **kwargs)


@dataclass
class HardCoreState:
    """Occupation of a hard-core configuration plus per-vertex counts of occupied neighbours."""

    occupied: np.ndarray
    blocked: np.ndarray
    size: int = 0

    @classmethod
    def empty(cls, n: int) -> "HardCoreState":
        return cls(occupied=np.zeros(n, dtype=bool), blocked=np.zeros(n, dtype=np.int32), size=0)

    @classmethod
    def from_members(cls, g: Graph, members: IndependentSet) -> "HardCoreState":
        state = cls.empty(g.n)
        state.occupied[list(members.members)] = True
        state.blocked = _blocked_counts(g, state.occupied)
        state.size = members.size
        return state

    def copy(self) -> "HardCoreState":
        return HardCoreState(self.occupied.copy(), self.blocked.copy(), self.size)

    def members(self) -> IndependentSet:
        return IndependentSet.from_vertices(np.flatnonzero(self.occupied).tolist())

    def audit(self, g: Graph) -> None:
        occ = self.occupied
        if np.any(occ[g.edges[:, 0]] & occ[g.edges[:, 1]]):
            raise AssertionError("occupied vertices are adjacent")
        if not np.array_equal(self.blocked, _blocked_counts(g, occ)):
            raise AssertionError("blocked counts out of sync with occupation")
        if self.size != int(occ.sum()):
            raise AssertionError("size out of sync with occupation")


def _blocked_counts(g: Graph, occupied: np.ndarray) -> np.ndarray:
    u, v = g.edges[:, 0], g.edges[:, 1]
    counts = np.bincount(v[occupied[u]], minlength=g.n) + np.bincount(u[occupied[v]], minlength=g.n)
    return counts.astype(np.int32)


@dataclass
class PtStats:
    attempts: List[int] = field(default_factory=list)
    accepts: List[int] = field(default_factory=list)

    def acceptance_ratio(self, pair: int) -> float:
        return self.accepts[pair] / self.attempts[pair] if self.attempts[pair] else 0.0
