# app/models/independent_set.py
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple


@dataclass
class GreedyTrace:
    """Pick order of a greedy run: (step t, vertex, residual degree at pick)."""

    picks: List[Tuple[int, int, int]] = field(default_factory=list)

    def record(self, vertex: int, degree: int) -> None:
        self.picks.append((len(self.picks), vertex, degree))

    @property
    def t_star(self) -> int:
        return len(self.picks)


@dataclass(frozen=True)
class IndependentSet:
    members: Tuple[int, ...]
    trace: Optional[GreedyTrace] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_vertices(cls, vertices: Iterable[int], trace: Optional[GreedyTrace] = None) -> "IndependentSet":
        return cls(members=tuple(sorted(int(v) for v in set(vertices))), trace=trace)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def alpha(self) -> int:
        return len(self.members)
