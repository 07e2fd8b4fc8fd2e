"""Klein-four connection classes and their counts.

A class is an unordered triple ``{a, b, a+b}`` in ``H^1(Y; Z/2)``; its
second Stiefel-Whitney class is ``ab + b(a+b) + a(a+b) = a^2 + b^2 + ab``.
Counting goes through ordered pairs ``(a, b)``: an orbit with trivial
stabilizer contributes 6 pairs, ``{a, a, 0}`` contributes 3 and
``{0, 0, 0}`` contributes 1, so the stabilizer-refined counts follow from
the pair histogram and the square-root counts alone.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence

import numpy as np

from .cupring import CupRing, H2Class, cup, square
from .gf2core import BitVec, DimensionError, check_vec

DEFAULT_TABLE_CAP = 20

# Rows of the pair scan handled per numpy block (2**_BLOCK_BITS outer vectors).
_BLOCK_BITS = 6


class OrbitCountError(AssertionError):
    """Pair counts are not consistent with an S3 action; the tensor is not symmetric."""


class OrbitTriple(NamedTuple):
    """Orbit counts by S3-stabilizer order 1, 2 and 6."""

    v1: int
    v2: int
    v3: int

    @property
    def norm(self) -> int:
        return self.v1 + self.v2 + self.v3

    def __mul__(self, other):
        if not isinstance(other, OrbitTriple):
            return NotImplemented
        return vcheck_product(self, other)

    __rmul__ = None  # tuple repetition must never sneak in


def vcheck_product(v: OrbitTriple, u: OrbitTriple) -> OrbitTriple:
    """Orbit triple of a fibre product over S3; the norm counts classes on a connected sum."""
    v1, v2, v3 = v
    u1, u2, u3 = u
    return OrbitTriple(
        6 * v1 * u1 + 3 * v1 * u2 + 3 * v2 * u1 + v1 * u3 + v3 * u1 + v2 * u2,
        v2 * u2 + v2 * u3 + v3 * u2,
        v3 * u3,
    )


@dataclass(frozen=True, order=True)
class KleinTriple:
    """Canonical representative ``(a, b)`` of the class ``{a, b, a+b}``.

    The representative is the lexicographically least of the six ordered
    pairs drawn from the triple.
    """

    a: BitVec
    b: BitVec

    @classmethod
    def canonical(cls, a: BitVec, b: BitVec) -> "KleinTriple":
        c = a ^ b
        return cls(*min((a, b), (b, a), (a, c), (c, a), (b, c), (c, b)))

    @property
    def c(self) -> BitVec:
        return self.a ^ self.b

    @property
    def members(self):
        return tuple(sorted((self.a, self.b, self.c)))

    @property
    def stabilizer_order(self) -> int:
        if self.a == 0 and self.b == 0:
            return 6
        if self.a == 0 or self.b == 0 or self.a == self.b:
            return 2
        return 1


def klein_classes(n: int) -> Iterator[KleinTriple]:
    """Every Klein-four class in dimension ``n``, each exactly once."""
    for a in range(1 << n):
        for b in range(a, 1 << n):
            kt = KleinTriple.canonical(a, b)
            if (kt.a, kt.b) == (a, b):
                yield kt


def w2_of(R: CupRing, a: BitVec, b: BitVec) -> H2Class:
    """``w_2`` of the class ``{a, b, a+b}``: ``a^2 + b^2 + ab``."""
    return square(R, a) ^ square(R, b) ^ cup(R, a, b)


def total_count(b: int) -> int:
    """Number of Klein-four classes when ``H^1`` has dimension ``b``."""
    if b < 0:
        raise ValueError("dimension must be non-negative")
    num = 3 * 2**b + 4**b + 2
    q, r = divmod(num, 6)
    if r:
        raise ArithmeticError(f"class count for b={b} is not an integer")
    return q


# ---------------------------------------------------------------------------
# The 4^n scan


def _doubling_table(columns: Sequence[int], n: int) -> np.ndarray:
    """Values of the linear map ``e_j -> columns[j]`` on all ``2**n`` vectors."""
    t = np.zeros(1 << n, dtype=np.uint32)
    for j in range(n):
        t[1 << j : 2 << j] = t[: 1 << j] ^ np.uint32(columns[j])
    return t


class _ScanTables:
    """Per-ring lookup tables shared by every block of the pair scan."""

    def __init__(self, R: CupRing):
        n = R.dim
        self.n = n
        self.sq = _doubling_table([square(R, 1 << i) for i in range(n)], n)
        # cup_rows[i][b] = e_i * b as an H2 class
        self.cup_rows = [
            _doubling_table([cup(R, 1 << i, 1 << j) for j in range(n)], n) for i in range(n)
        ]


def _scan_blocks(tables: _ScanTables, starts: Sequence[int], block_bits: int) -> np.ndarray:
    n = tables.n
    size = 1 << n
    hist = np.zeros(size, dtype=np.int64)
    rows = 1 << block_bits
    block = np.empty((rows, size), dtype=np.uint32)
    for base in starts:
        row0 = np.zeros(size, dtype=np.uint32)
        for i in range(block_bits, n):
            if (base >> i) & 1:
                row0 ^= tables.cup_rows[i]
        block[0] = row0
        for j in range(block_bits):
            block[1 << j : 2 << j] = block[: 1 << j] ^ tables.cup_rows[j]
        w2 = block ^ tables.sq[base : base + rows, None] ^ tables.sq[None, :]
        hist += np.bincount(w2.ravel(), minlength=size)
    return hist


def _scan_worker(args):
    R, starts, block_bits = args
    return _scan_blocks(_ScanTables(R), starts, block_bits)


def _ordered_pair_histogram(R: CupRing, workers: int = 1) -> np.ndarray:
    n = R.dim
    block_bits = min(_BLOCK_BITS, n)
    starts = list(range(0, 1 << n, 1 << block_bits))
    if workers <= 1 or len(starts) < 2:
        return _scan_blocks(_ScanTables(R), starts, block_bits)
    chunks = [starts[w::workers] for w in range(workers)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = pool.map(_scan_worker, [(R, c, block_bits) for c in chunks])
        return sum(parts, np.zeros(1 << n, dtype=np.int64))


@lru_cache(maxsize=32)
def _cached_histogram(R: CupRing) -> np.ndarray:
    h = _ordered_pair_histogram(R)
    h.setflags(write=False)
    return h


def ordered_pair_counts(R: CupRing, workers: int = 1) -> np.ndarray:
    """``N[x]`` = number of ordered pairs ``(a, b)`` with ``a^2 + b^2 + ab = x``."""
    if workers > 1:
        return _ordered_pair_histogram(R, workers)
    return _cached_histogram(R)


@lru_cache(maxsize=32)
def square_root_counts(R: CupRing) -> np.ndarray:
    """``S[x]`` = number of ``a`` (zero included) with ``a^2 = x``."""
    sq = _doubling_table([square(R, 1 << i) for i in range(R.dim)], R.dim)
    s = np.bincount(sq, minlength=1 << R.dim).astype(np.int64)
    s.setflags(write=False)
    return s


def _orbits_from_counts(n_ordered: int, roots: int, x: H2Class) -> OrbitTriple:
    v3 = int(x == 0)
    v2 = roots - v3
    q, r = divmod(n_ordered - 3 * v2 - v3, 6)
    if r or q < 0:
        raise OrbitCountError(
            f"class {x}: {n_ordered} ordered pairs, {v2} square roots; not an S3-set"
        )
    return OrbitTriple(q, v2, v3)


def v_orbits(R: CupRing, x: H2Class) -> OrbitTriple:
    check_vec(x, R.dim)
    return _orbits_from_counts(
        int(ordered_pair_counts(R)[x]), int(square_root_counts(R)[x]), x
    )


def v_count(R: CupRing, x: H2Class) -> int:
    """Number of Klein-four classes whose ``w_2`` equals ``x``."""
    return v_orbits(R, x).norm


def v_table(
    R: CupRing, cap: Optional[int] = DEFAULT_TABLE_CAP, workers: int = 1
) -> List[OrbitTriple]:
    """Orbit triple of every class ``x``; entry ``x`` of the list belongs to ``x``.

    The result does not depend on ``workers``.
    """
    if cap is not None and R.dim > cap:
        raise DimensionError(f"table of dim {R.dim} exceeds cap {cap}")
    counts = ordered_pair_counts(R, workers)
    roots = square_root_counts(R)
    return [_orbits_from_counts(int(counts[x]), int(roots[x]), x) for x in range(1 << R.dim)]


def classes_with_w2(R: CupRing, x: H2Class) -> List[KleinTriple]:
    """Explicit listing of the classes counted by ``v_count(R, x)``."""
    check_vec(x, R.dim)
    return [kt for kt in klein_classes(R.dim) if w2_of(R, kt.a, kt.b) == x]


def w2_histogram(classes: Sequence[KleinTriple], R: CupRing) -> Dict[H2Class, int]:
    out: Dict[H2Class, int] = {}
    for kt in classes:
        x = w2_of(R, kt.a, kt.b)
        out[x] = out.get(x, 0) + 1
    return out
