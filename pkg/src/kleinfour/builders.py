"""Cohomology rings of specific 3-manifolds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import FrozenSet, List, Sequence, Tuple

from .cupring import CupRing, H2Class, direct_sum
from .gf2core import MAX_DIM, BitVec, DimensionError, bits_of
from .klein4 import KleinTriple, klein_classes, w2_of


class UnsupportedRing(ValueError):
    """The requested manifold's ring is not among those this library can build."""


def free(m: int) -> CupRing:
    """Zero cup form of dimension ``m``: surgery on an unlink, ``#m S^1 x S^2``."""
    if not 0 <= m <= MAX_DIM:
        raise DimensionError(f"free({m}) exceeds cap {MAX_DIM}")
    return CupRing.from_triples(m, [])


def rp3() -> CupRing:
    return CupRing.from_triples(1, [(0, 0, 0)])


def connect_sum(parts: Sequence[CupRing]) -> CupRing:
    return reduce(direct_sum, parts, free(0))


BORROMEAN_FRAMINGS = (0, 2, 4)


def borromean(f1: int, f2: int, f3: int) -> CupRing:
    """Surgery on the Borromean rings, framings given by class.

    Each framing is 0, 2 (any framing = 2 mod 4) or 4 (nonzero, = 0 mod 4).
    The three generators multiply to the fundamental class, and a generator
    cubes to 1 exactly when its framing is 2 mod 4.
    """
    fs = (f1, f2, f3)
    for f in fs:
        if f not in BORROMEAN_FRAMINGS:
            raise ValueError(f"framing class {f} not in {BORROMEAN_FRAMINGS}")
    triples = [(0, 1, 2)] + [(i, i, i) for i, f in enumerate(fs) if f == 2]
    return CupRing.from_triples(3, sorted(triples))


def torus3() -> CupRing:
    return borromean(0, 0, 0)


@dataclass(frozen=True)
class SeifertData:
    g: int
    b: int
    cone: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        for alpha, _ in self.cone:
            if alpha < 1:
                raise ValueError(f"cone order {alpha} must be >= 1")


def seifert_parity(s: SeifertData) -> int:
    """Parity of ``v(x)`` for a non-square ``x`` on a Seifert fibred space."""
    all_odd = all(alpha % 2 == 1 for alpha, _ in s.cone)
    euler = s.b + sum(beta for _, beta in s.cone)
    return int(s.g == 1 and all_odd and euler % 2 == 0)


def seifert_g1_ring(c_square_is_ab: bool) -> CupRing:
    """Genus-one ring: basis a, b, c with a^2 = b^2 = 0 and c^2 either 0 or ab."""
    triples = [(0, 1, 2)] + ([(2, 2, 2)] if c_square_is_ab else [])
    return CupRing.from_triples(3, triples)


def seifert_ring(s: SeifertData, c_square_is_ab: bool = False) -> CupRing:
    """Ring of the Seifert fibred space where it is known without extra input.

    Covers the genus-one odd-parity case and the case (all cone orders odd,
    ``b + sum beta`` odd) whose ring is that of ``#2g S^1 x S^2``.
    """
    all_odd = all(alpha % 2 == 1 for alpha, _ in s.cone)
    euler = s.b + sum(beta for _, beta in s.cone)
    if seifert_parity(s):
        return seifert_g1_ring(c_square_is_ab)
    if all_odd and euler % 2 == 1:
        return free(2 * s.g)
    raise UnsupportedRing(
        "ring not available for these Seifert invariants; only the parity is computed"
    )


# ---------------------------------------------------------------------------
# Branched double covers


@dataclass(frozen=True)
class LinkData:
    """Mod-2 linking matrix of an ``n``-component link; the diagonal is ignored."""

    n: int
    lk: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a link needs at least one component")
        if len(self.lk) != self.n or any(len(r) != self.n for r in self.lk):
            raise ValueError(f"linking matrix must be {self.n}x{self.n}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.lk[i][j] % 2 != self.lk[j][i] % 2:
                    raise ValueError(f"linking matrix not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_matrix(cls, lk: Sequence[Sequence[int]]) -> "LinkData":
        n = len(lk)
        return cls(n, tuple(tuple(int(v) % 2 if i != j else 0 for j, v in enumerate(r))
                            for i, r in enumerate(lk)))

    @classmethod
    def from_pairs(cls, n: int, linked: Sequence[Tuple[int, int]]) -> "LinkData":
        """Components numbered from 1; each listed pair has odd linking number."""
        m = [[0] * n for _ in range(n)]
        for i, j in linked:
            m[i - 1][j - 1] = m[j - 1][i - 1] = 1
        return cls.from_matrix(m)

    def linking(self, i: int, j: int) -> int:
        return self.lk[i][j] % 2 if i != j else 0


def cover_triple_value(L: LinkData, i: int, j: int, k: int) -> int:
    """``(a_i a_j a_k)[Sigma(L)]`` for components ``i, j, k`` (0-based, any order)."""
    idx = sorted((i, j, k))
    if idx[0] == idx[2]:
        return sum(L.linking(idx[0], m) for m in range(L.n) if m != idx[0]) % 2
    if idx[0] == idx[1]:
        return L.linking(idx[0], idx[2])
    if idx[1] == idx[2]:
        return L.linking(idx[1], idx[0])
    return 0


@dataclass(frozen=True)
class BranchedCover:
    """Ring of ``Sigma(L)`` on the basis ``a_1 .. a_{n-1}``; ``a_n`` is their sum."""

    link: LinkData
    ring: CupRing

    @property
    def n(self) -> int:
        return self.link.n


def branched_double_cover(L: LinkData) -> BranchedCover:
    m = L.n - 1
    triples = [
        (i, j, k)
        for i in range(m)
        for j in range(i, m)
        for k in range(j, m)
        if cover_triple_value(L, i, j, k)
    ]
    return BranchedCover(L, CupRing.from_triples(m, triples))


def pd_to_subset(cover: BranchedCover, phi: H2Class) -> FrozenSet[int]:
    """Even subset of ``{1..n}`` Poincare dual to ``phi``.

    ``i < n`` is a member iff ``phi(a_i) = 1``; ``n`` is added to make the
    size even.
    """
    members = {i + 1 for i in bits_of(phi)}
    if len(members) % 2:
        members.add(cover.n)
    return frozenset(members)


def subset_to_pd(cover: BranchedCover, s: FrozenSet[int]) -> H2Class:
    if len(s) % 2:
        raise ValueError(f"subset {sorted(s)} has odd size")
    return sum(1 << (i - 1) for i in s if i != cover.n)


def class_label(v: BitVec) -> str:
    """``a1+a3`` style name of a degree-one class, 1-based."""
    if v == 0:
        return "0"
    return "+".join(f"a{i + 1}" for i in bits_of(v))


def redundant_label(cover: BranchedCover, v: BitVec) -> str:
    """The same class written with ``a_n`` via ``a_1 + ... + a_n = 0``."""
    if cover.n == 1:
        return "0"
    alt = [i + 1 for i in range(cover.n - 1) if not (v >> i) & 1] + [cover.n]
    return "+".join(f"a{i}" for i in alt)


def subset_label(s: FrozenSet[int]) -> str:
    if not s:
        return "0"
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def _class_key(v: BitVec):
    return (bin(v).count("1"), v)


def triple_order(kt: KleinTriple):
    """Sort key: trivial class, then ``{a, a, 0}`` classes, then proper triples."""
    if kt.stabilizer_order == 6:
        return (0,)
    if kt.stabilizer_order == 2:
        return (1, _class_key(kt.a or kt.b))
    members = sorted((kt.a, kt.b, kt.c), key=_class_key)
    return (2, tuple(_class_key(v)[0] for v in members), tuple(members))


def triple_label(kt: KleinTriple) -> str:
    if kt.stabilizer_order == 6:
        return "{0,0,0}"
    if kt.stabilizer_order == 2:
        a = class_label(kt.a or kt.b)
        return "{" + f"{a},{a},0" + "}"
    members = sorted((kt.a, kt.b, kt.c), key=_class_key)
    return "{" + ",".join(class_label(v) for v in members) + "}"


def f_table(cover: BranchedCover) -> List[Tuple[KleinTriple, FrozenSet[int]]]:
    """Each Klein-four class with the even subset dual to its ``w_2``."""
    rows = []
    for kt in sorted(klein_classes(cover.ring.dim), key=triple_order):
        rows.append((kt, pd_to_subset(cover, w2_of(cover.ring, kt.a, kt.b))))
    return rows


def f_table_lines(cover: BranchedCover) -> List[str]:
    return [f"f{triple_label(kt)} = {subset_label(s)}" for kt, s in f_table(cover)]


# L8n8: components 1-2, 1-3, 2-4, 3-4 link oddly; 1-4 and 2-3 evenly.
L8N8 = LinkData.from_pairs(4, [(1, 2), (1, 3), (2, 4), (3, 4)])

HOPF = LinkData.from_pairs(2, [(1, 2)])


def unlink(n: int) -> LinkData:
    return LinkData.from_pairs(n, [])
