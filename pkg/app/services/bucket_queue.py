# app/services/bucket_queue.py
from typing import List, Sequence, Tuple


class BucketQueue:
    """
    Degree-indexed buckets over the live vertices of a residual graph.

    ``buckets[k]`` holds the live vertices of residual degree k; ``slot[v]`` is
    v's index inside its bucket so removal is a constant-time swap-remove.
    ``min_pointer`` never exceeds the index of a non-empty bucket: it only
    moves down when a vertex is relocated and scans up when popping.
    """

    def __init__(self, degrees: Sequence[int]) -> None:
        n = len(degrees)
        self.degree: List[int] = list(degrees)
        self.buckets: List[List[int]] = [[] for _ in range(max(self.degree, default=0) + 1)]
        self.slot: List[int] = [0] * n
        self.live = bytearray(b"\x01") * n
        self.size = n
        self.min_pointer = 0
        for v, k in enumerate(self.degree):
            bucket = self.buckets[k]
            self.slot[v] = len(bucket)
            bucket.append(v)

    def __len__(self) -> int:
        return self.size

    def _detach(self, v: int) -> None:
        bucket = self.buckets[self.degree[v]]
        last = bucket.pop()
        if last != v:
            i = self.slot[v]
            bucket[i] = last
            self.slot[last] = i

    def remove(self, v: int) -> None:
        self._detach(v)
        self.live[v] = 0
        self.size -= 1

    def decrement(self, v: int) -> None:
        self._detach(v)
        k = self.degree[v] - 1
        self.degree[v] = k
        bucket = self.buckets[k]
        self.slot[v] = len(bucket)
        bucket.append(v)
        if k < self.min_pointer:
            self.min_pointer = k

    def pop_min(self, u: float) -> Tuple[int, int]:
        """Remove and return (vertex, degree) drawn uniformly from the minimum bucket; u in [0, 1)."""
        if not self.size:
            raise IndexError("pop from empty BucketQueue")
        while not self.buckets[self.min_pointer]:
            self.min_pointer += 1
        k = self.min_pointer
        bucket = self.buckets[k]
        v = bucket[int(u * len(bucket))]
        self.remove(v)
        return v, k

    def audit(self, offsets: Sequence[int], neighbors: Sequence[int]) -> None:
        """Recompute residual degrees from scratch and check every bucket entry against them."""
        seen = 0
        for k, bucket in enumerate(self.buckets):
            if bucket and k < self.min_pointer:
                raise AssertionError(f"min_pointer {self.min_pointer} above non-empty bucket {k}")
            for i, v in enumerate(bucket):
                if not self.live[v]:
                    raise AssertionError(f"dead vertex {v} in bucket {k}")
                if self.slot[v] != i or self.degree[v] != k:
                    raise AssertionError(f"vertex {v} misplaced: bucket {k} slot {i}")
                residual = sum(self.live[w] for w in neighbors[offsets[v]:offsets[v + 1]])
                if residual != k:
                    raise AssertionError(f"vertex {v} in bucket {k} has residual degree {residual}")
                seen += 1
        if seen != self.size:
            raise AssertionError(f"{seen} vertices in buckets, {self.size} live")
