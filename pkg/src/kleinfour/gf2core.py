"""Bit-packed linear algebra over GF(2).

Vectors are plain Python ints: bit ``i`` (least significant first) is the
coefficient of the ``i``-th basis generator.  Dimensions are capped at
``MAX_DIM`` so every vector fits in a single machine word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

MAX_DIM = 24

BitVec = int


class DimensionError(ValueError):
    """Raised when vector or matrix dimensions disagree or exceed MAX_DIM."""


def check_vec(v: BitVec, n: int) -> BitVec:
    if v < 0 or v >> n:
        raise DimensionError(f"vector {v:#x} does not fit in dimension {n}")
    return v


def parity(v: int) -> int:
    return v.bit_count() & 1


def parity_dot(u: BitVec, v: BitVec) -> int:
    """Return popcount(u & v) mod 2."""
    return (u & v).bit_count() & 1


def basis_vec(i: int) -> BitVec:
    return 1 << i


def bits_of(v: BitVec) -> List[int]:
    """Indices of the set bits of ``v`` in increasing order."""
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def from_bits(indices: Iterable[int]) -> BitVec:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def to_bitstring(v: BitVec, n: int) -> str:
    """Render ``v`` as a string whose first character is coordinate 0."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def from_bitstring(s: str) -> Tuple[BitVec, int]:
    """Inverse of :func:`to_bitstring`; returns ``(vector, length)``."""
    s = s.strip()
    if any(ch not in "01" for ch in s):
        raise ValueError(f"not a bit string: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1"), len(s)


@dataclass(frozen=True)
class BitMatrix:
    """An ``m x ncols`` matrix over GF(2) stored as a tuple of row ints."""

    rows: Tuple[BitVec, ...]
    ncols: int

    def __post_init__(self):
        if not 0 <= self.ncols <= MAX_DIM:
            raise DimensionError(f"column count {self.ncols} exceeds {MAX_DIM}")
        for r in self.rows:
            check_vec(r, self.ncols)

    @classmethod
    def from_rows(cls, rows: Sequence[BitVec], ncols: int) -> "BitMatrix":
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zero(cls, m: int, n: Optional[int] = None) -> "BitMatrix":
        return cls((0,) * m, m if n is None else n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.ncols):
            col = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    col |= 1 << i
            cols.append(col)
        return BitMatrix(tuple(cols), self.nrows)


def mat_vec(M: BitMatrix, v: BitVec) -> BitVec:
    """Component ``k`` of the result is ``parity_dot(M.rows[k], v)``."""
    check_vec(v, M.ncols)
    out = 0
    for k, r in enumerate(M.rows):
        if (r & v).bit_count() & 1:
            out |= 1 << k
    return out


def _row_reduce(M: BitMatrix):
    """Reduced row echelon form.

    Returns ``(rows, pivots, transform)`` where ``transform[i]`` records which
    original rows were summed to produce reduced row ``i``.
    """
    rows = list(M.rows)
    transform = [1 << i for i in range(len(rows))]
    pivots: List[int] = []
    r = 0
    for col in range(M.ncols):
        pivot = None
        for i in range(r, len(rows)):
            if (rows[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        transform[r], transform[pivot] = transform[pivot], transform[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
                transform[i] ^= transform[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, transform


def rank(M: BitMatrix) -> int:
    return len(_row_reduce(M)[1])


def kernel_basis(M: BitMatrix) -> List[BitVec]:
    """Basis of ``{v : mat_vec(M, v) == 0}``, one vector per free column."""
    rows, pivots, _ = _row_reduce(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, p in enumerate(pivots):
            if (rows[i] >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def solve(M: BitMatrix, y: BitVec) -> Optional[BitVec]:
    """Some ``x`` with ``mat_vec(M, x) == y``, or ``None`` if inconsistent."""
    check_vec(y, M.nrows)
    rows, pivots, transform = _row_reduce(M)
    x = 0
    for i, p in enumerate(pivots):
        if parity_dot(transform[i], y):
            x |= 1 << p
    # zero rows of the reduced form must see a zero right-hand side
    for i in range(len(pivots), len(rows)):
        if parity_dot(transform[i], y):
            return None
    return x


def span(vectors: Sequence[BitVec]) -> List[BitVec]:
    """All elements of the span, in no particular order."""
    out = [0]
    for v in vectors:
        if v in out:
            continue
        out += [w ^ v for w in out]
    return out


def echelon_basis(vectors: Sequence[BitVec], n: int) -> List[BitVec]:
    """A reduced basis for the span of ``vectors`` in dimension ``n``."""
    rows, pivots, _ = _row_reduce(BitMatrix(tuple(vectors), n))
    return rows[: len(pivots)]
