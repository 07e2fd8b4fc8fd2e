"""Invariant suite run by ``kleinfour verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional

from .builders import f_table_lines
from .casson import admissible_count_formula, count_admissible
from .cupring import CupRing, cup, direct_sum, embed_h2, is_square, k_invariant, square, square_linear
from .gf2core import from_bitstring
from .klein4 import OrbitCountError, klein_classes, total_count, v_table
from .oracle import brute_v_table
from .spec_io import RingSpec, explicit_spec

EXHAUSTIVE_DIM = 12
LISTING_DIM = 8
CONNECT_SUM_MAX_DIM = 10


@dataclass
class Failure:
    check: str
    detail: str
    ring: CupRing

    def reproducer(self) -> Dict[str, Any]:
        ring = {"schema": "cupring/1", "type": "tensor", "dim": self.ring.dim,
                "entries": sorted(list(t) for t in self.ring.entries)}
        if self.ring.is_symmetric():
            ring = explicit_spec(self.ring)
        return {"check": self.check, "detail": self.detail, "ring": ring}


def theorem_violation(R: CupRing, table) -> Optional[str]:
    """First violated parity statement for non-square classes, if any."""
    b, k = R.dim, k_invariant(R)
    non_squares = [x for x in range(1 << b) if not is_square(R, x)]
    parities = {table[x].norm % 2 for x in non_squares}
    if k >= 1 and len(parities) > 1:
        return f"k={k}: v parity not constant over non-squares"
    if k >= 4 and parities - {0}:
        return f"k={k} >= 4 but some non-square has odd v"
    for x in non_squares:
        v = table[x].norm
        if b == 2 and v % 2:
            return f"b=2, x={x}: v={v} is odd"
        if b == 1 and v != 0:
            return f"b=1, x={x}: v={v} is not zero"
    return None


def _check(R: CupRing, oracle_cap: int, expect: Dict[str, Any], cover) -> Optional[tuple]:
    n = R.dim
    if not R.is_symmetric():
        return "symmetry", "tensor not invariant under index permutations"
    if not R.postnikov_check():
        return "postnikov", f"u(i,i,j) != u(j,j,i) at {R.postnikov_violations()}"
    candidates: Iterable[int] = range(1 << n)
    if n > EXHAUSTIVE_DIM:
        rng = random.Random(n)
        candidates = [rng.getrandbits(n) for _ in range(4096)]
    for a in candidates:
        if square(R, a) != square_linear(R, a):
            return "squaring-linear", f"a={a}"
    try:
        table = v_table(R, cap=None)
    except OrbitCountError as exc:
        return "orbit-counts", str(exc)
    if sum(t.norm for t in table) != total_count(n):
        return "total", f"sum of v is {sum(t.norm for t in table)}, expected {total_count(n)}"
    k = k_invariant(R)
    for x, t in enumerate(table):
        if t.v3 != int(x == 0):
            return "stabilizer-6", f"x={x}: v3={t.v3}"
        if t.v2 + t.v3 not in (0, 2**k):
            return "square-roots", f"x={x}: v2+v3={t.v2 + t.v3}, 2^k={2**k}"
    if n <= LISTING_DIM:
        listed = [[0, 0, 0] for _ in range(1 << n)]
        slot = {1: 0, 2: 1, 6: 2}
        for kt in klein_classes(n):
            x = square(R, kt.a) ^ square(R, kt.b) ^ cup(R, kt.a, kt.b)
            listed[x][slot[kt.stabilizer_order]] += 1
        for x, t in enumerate(table):
            if tuple(listed[x]) != tuple(t):
                return "orbit-listing", f"x={x}: listed {listed[x]}, computed {tuple(t)}"
    if count_admissible(R) != admissible_count_formula(n, k):
        return "admissible-count", f"{count_admissible(R)} != (2^{k}-1)2^{n - k}"
    if n <= oracle_cap:
        brute = brute_v_table(R)
        for x, t in enumerate(table):
            if brute[x] != t.norm:
                return "oracle", f"x={x}: brute {brute[x]}, fast {t.norm}"
    msg = theorem_violation(R, table)
    if msg:
        return "parity-theorem", msg
    return _check_expect(R, table, expect, cover)


def _check_expect(R, table, expect, cover) -> Optional[tuple]:
    if "k" in expect and k_invariant(R) != expect["k"]:
        return "expect-k", f"k={k_invariant(R)}, expected {expect['k']}"
    for bits, v in expect.get("v", {}).items():
        x, length = from_bitstring(bits)
        if length != R.dim:
            return "expect-v", f"class {bits!r} has wrong length"
        if table[x].norm != v:
            return "expect-v", f"v({bits})={table[x].norm}, expected {v}"
    if "admissible" in expect and count_admissible(R) != expect["admissible"]:
        return "expect-admissible", f"{count_admissible(R)} != {expect['admissible']}"
    if "f_table" in expect:
        if cover is None:
            return "expect-f-table", "f-table expected but spec is not a branched cover"
        got = f_table_lines(cover)
        for i, (g, e) in enumerate(zip(got, expect["f_table"])):
            if g != e:
                return "expect-f-table", f"row {i}: got {g!r}, expected {e!r}"
        if len(got) != len(expect["f_table"]):
            return "expect-f-table", f"{len(got)} rows, expected {len(expect['f_table'])}"
    return None


def _shrink(R: CupRing, fails) -> CupRing:
    """Drop tensor entries one S3-orbit at a time while the failure persists."""
    changed = True
    while changed:
        changed = False
        for t in sorted({tuple(sorted(e)) for e in R.entries}):
            smaller = CupRing(R.dim, frozenset(e for e in R.entries if tuple(sorted(e)) != t))
            if fails(smaller):
                R, changed = smaller, True
                break
    return R


def check_ring(
    R: CupRing,
    oracle_cap: int = 10,
    expect: Optional[Dict[str, Any]] = None,
    cover=None,
    shrink: bool = True,
) -> Optional[Failure]:
    expect = expect or {}
    res = _check(R, oracle_cap, expect, cover)
    if res is None:
        return None
    check = res[0]
    if shrink and not expect and cover is None:
        R = _shrink(R, lambda S: (_check(S, oracle_cap, {}, None) or (None,))[0] == check)
        res = _check(R, oracle_cap, {}, None)
    return Failure(res[0], res[1], R)


def check_spec(spec: RingSpec, oracle_cap: int = 10) -> Optional[Failure]:
    return check_ring(spec.ring, oracle_cap, spec.expect, spec.cover)


def check_connect_sum(R1: CupRing, R2: CupRing) -> Optional[Failure]:
    """Orbit-triple product against a direct count on the block sum, for every pair of classes."""
    t1, t2 = v_table(R1, cap=None), v_table(R2, cap=None)
    S = direct_sum(R1, R2)
    ts = v_table(S, cap=None)
    for x1, a in enumerate(t1):
        for x2, b in enumerate(t2):
            if (a * b).norm != ts[embed_h2(R1, R2, x1, x2)].norm:
                return Failure("connect-sum", f"x1={x1}, x2={x2}", S)
    return None


def check_family(count: int = 120, seed: int = 0, max_dim: int = 10,
                 oracle_cap: int = 10) -> tuple:
    """Returns ``(rings_checked, first_failure_or_None)``."""
    from .family import family

    rings: List[CupRing] = list(family(count, seed, max_dim))
    for R in rings:
        f = check_ring(R, oracle_cap=oracle_cap)
        if f:
            return len(rings), f
    for R1, R2 in zip(rings[::2], rings[1::2]):
        if R1.dim + R2.dim <= CONNECT_SUM_MAX_DIM:
            f = check_connect_sum(R1, R2)
            if f:
                return len(rings), f
    return len(rings), None
