"""Random realizable rings: connected sums of geometric blocks, optionally in a scrambled basis."""

from __future__ import annotations

import random
from typing import Iterator, List, Optional

from . import builders
from .cupring import CupRing, pullback
from .gf2core import BitMatrix, rank


def random_block(rng: random.Random, room: int) -> Optional[CupRing]:
    choices = []
    if room >= 1:
        choices += ["free1", "rp3", "cover"]
    if room >= 2:
        choices += ["free2"]
    if room >= 3:
        choices += ["borromean", "seifert"]
    if not choices:
        return None
    kind = rng.choice(choices)
    if kind == "free1":
        return builders.free(1)
    if kind == "free2":
        return builders.free(2)
    if kind == "rp3":
        return builders.rp3()
    if kind == "borromean":
        return builders.borromean(*(rng.choice(builders.BORROMEAN_FRAMINGS) for _ in range(3)))
    if kind == "seifert":
        return builders.seifert_g1_ring(rng.random() < 0.5)
    n = rng.randint(2, min(room, 5) + 1)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    linked = [p for p in pairs if rng.random() < 0.5]
    return builders.branched_double_cover(builders.LinkData.from_pairs(n, linked)).ring


def random_invertible(rng: random.Random, n: int) -> List[int]:
    while True:
        cols = [rng.getrandbits(n) for _ in range(n)] if n else []
        if rank(BitMatrix(tuple(cols), n)) == n:
            return cols


def random_ring(rng: random.Random, max_dim: int = 10, scramble: float = 0.5) -> CupRing:
    target = rng.randint(1, max_dim)
    parts = []
    dim = 0
    while dim < target:
        block = random_block(rng, target - dim)
        parts.append(block)
        dim += block.dim
    ring = builders.connect_sum(parts)
    if ring.dim and rng.random() < scramble:
        ring = pullback(ring, random_invertible(rng, ring.dim))
    return ring


def family(count: int = 120, seed: int = 0, max_dim: int = 10) -> Iterator[CupRing]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_ring(rng, max_dim)
