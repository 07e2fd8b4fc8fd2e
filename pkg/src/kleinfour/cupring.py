"""Mod-2 cohomology rings of closed oriented 3-manifolds.

A ring is stored as its triple cup product form ``u(a, b, c) = (a b c)[Y]``
on ``H^1(Y; Z/2)``, a symmetric trilinear form over GF(2).  Degree-two
classes never get their own basis: Poincare duality identifies
``H^2(Y; Z/2)`` with the dual of ``H^1``, so a class ``x`` is stored as the
bit vector of its values ``x(e_0), ..., x(e_{n-1})`` on the chosen
``H^1`` basis.  A product ``a b`` is the functional ``c -> u(a, b, c)``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .gf2core import (
    MAX_DIM,
    BitMatrix,
    BitVec,
    DimensionError,
    bits_of,
    check_vec,
    echelon_basis,
    kernel_basis,
    mat_vec,
    rank,
    solve,
)

H2Class = int

Triple = Tuple[int, int, int]


class RingError(ValueError):
    """Malformed tensor input."""


class PostnikovError(RingError):
    """The form violates u(a,a,b) = u(b,b,a) and cannot come from a 3-manifold."""


class PostnikovWarning(UserWarning):
    pass


def _permutations(t: Triple) -> set:
    return set(itertools.permutations(t))


@dataclass(frozen=True)
class CupRing:
    """Dimension plus the set of ordered index triples on which ``u`` is 1.

    Use :meth:`from_triples` for the canonical sorted-triple input; the raw
    constructor accepts any entry set, including non-symmetric ones, so that
    validation can be exercised.
    """

    dim: int
    entries: FrozenSet[Triple]

    def __post_init__(self):
        if not 0 <= self.dim <= MAX_DIM:
            raise DimensionError(f"dimension {self.dim} outside 0..{MAX_DIM}")
        for t in self.entries:
            if len(t) != 3 or not all(0 <= i < self.dim for i in t):
                raise RingError(f"index triple {t} out of range for dim {self.dim}")

    @classmethod
    def from_triples(
        cls, dim: int, triples: Iterable[Sequence[int]], strict: bool = True
    ) -> "CupRing":
        """Build from sorted triples ``i <= j <= k`` where ``u`` is 1.

        Duplicates and unsorted triples are rejected.  In strict mode a
        Postnikov violation raises; otherwise it only warns.
        """
        seen = set()
        entries = set()
        for t in triples:
            t = tuple(int(i) for i in t)
            if len(t) != 3:
                raise RingError(f"expected an index triple, got {list(t)}")
            if not (t[0] <= t[1] <= t[2]):
                raise RingError(f"triple {list(t)} is not sorted")
            if t in seen:
                raise RingError(f"duplicate triple {list(t)}")
            seen.add(t)
            entries |= _permutations(t)
        ring = cls(dim, frozenset(entries))
        if not ring.postnikov_check():
            msg = f"cup form violates u(a,a,b)=u(b,b,a): {ring.postnikov_violations()}"
            if strict:
                raise PostnikovError(msg)
            warnings.warn(msg, PostnikovWarning, stacklevel=2)
        return ring

    @cached_property
    def triples(self) -> Tuple[Triple, ...]:
        """Sorted canonical triples; only meaningful for symmetric tensors."""
        return tuple(sorted({tuple(sorted(t)) for t in self.entries}))

    @cached_property
    def slices(self) -> Tuple[Tuple[BitVec, ...], ...]:
        # slices[k][i] has bit j set iff u(i, j, k) = 1
        s = [[0] * self.dim for _ in range(self.dim)]
        for i, j, k in self.entries:
            s[k][i] |= 1 << j
        return tuple(tuple(row) for row in s)

    @cached_property
    def square_matrix(self) -> BitMatrix:
        """Matrix of the squaring map ``H^1 -> H^2``: row ``k`` lists ``i`` with u(i,i,k)=1."""
        rows = [0] * self.dim
        for i, j, k in self.entries:
            if i == j:
                rows[k] |= 1 << i
        return BitMatrix(tuple(rows), self.dim)

    def is_symmetric(self) -> bool:
        return all(p in self.entries for t in self.entries for p in _permutations(t))

    def postnikov_violations(self) -> List[Tuple[int, int]]:
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if ((i, i, j) in self.entries) != ((j, j, i) in self.entries):
                    out.append((i, j))
        return out

    def postnikov_check(self) -> bool:
        return not self.postnikov_violations()

    def to_json(self) -> dict:
        return {"type": "explicit", "dim": self.dim, "u": [list(t) for t in self.triples]}

    def __repr__(self):
        return f"CupRing(dim={self.dim}, u={[list(t) for t in self.triples]})"


def _rowslice(R: CupRing, a: BitVec, k: int) -> BitVec:
    s = R.slices[k]
    out = 0
    for i in bits_of(a):
        out ^= s[i]
    return out


def eval_u(R: CupRing, a: BitVec, b: BitVec, c: BitVec) -> int:
    """``(a b c)[Y]`` by multilinear extension of the tensor."""
    n = R.dim
    check_vec(a, n), check_vec(b, n), check_vec(c, n)
    total = 0
    for k in bits_of(c):
        total ^= (_rowslice(R, a, k) & b).bit_count() & 1
    return total


def cup(R: CupRing, a: BitVec, b: BitVec) -> H2Class:
    """The product ``a b`` as the functional ``c -> u(a, b, c)``."""
    n = R.dim
    check_vec(a, n), check_vec(b, n)
    out = 0
    for k in range(n):
        if (_rowslice(R, a, k) & b).bit_count() & 1:
            out |= 1 << k
    return out


def square(R: CupRing, a: BitVec) -> H2Class:
    return cup(R, a, a)


def square_linear(R: CupRing, a: BitVec) -> H2Class:
    """Squaring through the linear map ``a -> sum a_i e_i^2``."""
    return mat_vec(R.square_matrix, a)


def square_kernel(R: CupRing) -> List[BitVec]:
    """Basis of ``{a : a^2 = 0}``, the kernel of the Bockstein."""
    return kernel_basis(R.square_matrix)


def k_invariant(R: CupRing) -> int:
    return R.dim - rank(R.square_matrix)


def square_image_basis(R: CupRing) -> List[H2Class]:
    return echelon_basis([square_linear(R, 1 << i) for i in range(R.dim)], R.dim)


def square_root(R: CupRing, x: H2Class) -> Optional[BitVec]:
    """Some ``a`` with ``a^2 = x``, or ``None`` when ``x`` is not a cup-square."""
    check_vec(x, R.dim)
    return solve(R.square_matrix, x)


def is_square(R: CupRing, x: H2Class) -> bool:
    return square_root(R, x) is not None


def direct_sum(R1: CupRing, R2: CupRing) -> CupRing:
    """Block sum: the second ring's generators follow the first's."""
    n = R1.dim
    if n + R2.dim > MAX_DIM:
        raise DimensionError(f"direct sum would have dimension {n + R2.dim} > {MAX_DIM}")
    shifted = {(i + n, j + n, k + n) for i, j, k in R2.entries}
    return CupRing(n + R2.dim, R1.entries | frozenset(shifted))


def embed_h2(R1: CupRing, R2: CupRing, x1: H2Class, x2: H2Class) -> H2Class:
    """The class ``x1 + x2`` of ``direct_sum(R1, R2)``."""
    return x1 | (x2 << R1.dim)


def pullback(R: CupRing, images: Sequence[BitVec]) -> CupRing:
    """Ring with ``u'(e_i, e_j, e_k) = u(T e_i, T e_j, T e_k)`` where ``T e_i = images[i]``."""
    m = len(images)
    entries = set()
    for i, j, k in itertools.combinations_with_replacement(range(m), 3):
        if eval_u(R, images[i], images[j], images[k]):
            entries |= _permutations((i, j, k))
    return CupRing(m, frozenset(entries))


def _invertible_maps(n: int):
    """All ordered bases of GF(2)^n, i.e. the columns of each element of GL(n, 2)."""

    def extend(cols, spanned):
        if len(cols) == n:
            yield tuple(cols)
            return
        for v in range(1, 1 << n):
            if v in spanned:
                continue
            yield from extend(cols + [v], spanned | {w ^ v for w in spanned})

    yield from extend([], {0})


ISO_MAX_DIM = 4


def brute_isomorphic(R1: CupRing, R2: CupRing) -> bool:
    """Exhaustive search over GL(n, 2) for an isomorphism of cup forms."""
    if R1.dim != R2.dim:
        return False
    if R1.dim > ISO_MAX_DIM:
        raise DimensionError(f"isomorphism search limited to dim <= {ISO_MAX_DIM}")
    if k_invariant(R1) != k_invariant(R2):
        return False
    target = R2.entries
    for cols in _invertible_maps(R1.dim):
        if pullback(R1, cols).entries == target:
            return True
    return False


def postnikov_check(R: CupRing) -> bool:
    """True iff ``u(i,i,j) = u(j,j,i)`` for all basis pairs."""
    return R.postnikov_check()
