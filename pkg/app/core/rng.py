# app/core/rng.py
"""
Seeded random streams.

Every run draws from numpy's PCG64 bit generator. Child seeds for matrix
cells, repetitions and PT replicas come from ``SeedSequence`` spawn keys, so a
whole benchmark matrix is reproducible from one integer.
"""
from typing import List

import numpy as np

RNG_ALGORITHM = "numpy.PCG64"

_SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _SEED_MASK))


def derive_seed(master: int, *coords: int) -> int:
    """Mix a master seed with integer coordinates into a 64-bit child seed."""
    ss = np.random.SeedSequence(entropy=master & _SEED_MASK, spawn_key=tuple(int(c) for c in coords))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    children = np.random.SeedSequence(seed & _SEED_MASK).spawn(count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]
