"""Slow, independent reference computations used for cross-checking.

Nothing here touches the pair-histogram machinery of :mod:`klein4`; products
are expanded bilinearly from the ring's sorted triples and Klein-four
classes are enumerated as explicit sets.
"""

from __future__ import annotations

import itertools
import re
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .builders import LinkData, branched_double_cover, pd_to_subset
from .cupring import CupRing, H2Class
from .gf2core import DimensionError, bits_of

ORACLE_MAX_DIM = 12

FRow = Tuple[Tuple[int, int], FrozenSet[int]]


def _check_dim(n: int):
    if n > ORACLE_MAX_DIM:
        raise DimensionError(f"oracle limited to dim <= {ORACLE_MAX_DIM}, got {n}")


def _unordered_triples(n: int) -> set:
    out = set()
    top = 1 << n
    for a in range(top):
        for b in range(a, top):
            out.add(tuple(sorted((a, b, a ^ b))))
    return out


def _product_rows(R: CupRing) -> List[List[int]]:
    """``rows[x][j]`` is the functional ``x e_j`` for every ``x``."""
    n = R.dim
    basic = [[0] * n for _ in range(n)]
    for t in R.triples:
        for i, j, k in set(itertools.permutations(t)):
            basic[i][j] |= 1 << k
    rows = []
    for x in range(1 << n):
        row = [0] * n
        for i in bits_of(x):
            for j in range(n):
                row[j] ^= basic[i][j]
        rows.append(row)
    return rows


def brute_v_table(R: CupRing) -> Dict[H2Class, int]:
    """``{x: v(x)}`` by listing every triple ``{a, b, c}`` with ``a + b + c = 0``."""
    _check_dim(R.dim)
    rows = _product_rows(R)

    def prod(x, y):
        out = 0
        for j in bits_of(y):
            out ^= rows[x][j]
        return out

    counts = {x: 0 for x in range(1 << R.dim)}
    for a, b, c in _unordered_triples(R.dim):
        counts[prod(a, b) ^ prod(b, c) ^ prod(a, c)] += 1
    return counts


def brute_v_count(R: CupRing, x: H2Class) -> int:
    return brute_v_table(R)[x]


def brute_total(b: int) -> int:
    _check_dim(b)
    return len(_unordered_triples(b))


# ---------------------------------------------------------------------------
# Linking matrices from a table of f-values

_LINE = re.compile(r"^f\{(?P<triple>[^}]*)\}\s*=\s*(?P<subset>0|\{[0-9,\s]*\})$")


def _parse_class(label: str) -> int:
    label = label.strip()
    if label == "0":
        return 0
    v = 0
    for term in label.split("+"):
        m = re.fullmatch(r"a(\d+)", term.strip())
        if not m:
            raise ValueError(f"bad class label {label!r}")
        v ^= 1 << (int(m.group(1)) - 1)
    return v


def parse_f_line(line: str) -> FRow:
    """Parse ``f{a1,a2,a1+a2} = {3,4}`` into ``((a, b), subset)``."""
    m = _LINE.match(line.strip())
    if not m:
        raise ValueError(f"cannot parse f-table line {line!r}")
    members = [_parse_class(s) for s in m.group("triple").split(",")]
    if len(members) != 3:
        raise ValueError(f"expected three classes in {line!r}")
    a, b, c = members
    if a ^ b ^ c:
        raise ValueError(f"classes in {line!r} do not sum to zero")
    sub = m.group("subset")
    subset = frozenset() if sub == "0" else frozenset(
        int(s) for s in sub.strip("{}").split(",") if s.strip()
    )
    return (a, b), subset


def brute_lk_recovery(rows: Sequence[FRow], n: int = 4) -> List[LinkData]:
    """Every mod-2 linking matrix whose branched cover reproduces all rows."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    found = []
    for mask in range(1 << len(pairs)):
        linked = [p for bit, p in enumerate(pairs) if (mask >> bit) & 1]
        L = LinkData.from_pairs(n, linked)
        cover = branched_double_cover(L)
        prows = _product_rows(cover.ring)

        def prod(x, y):
            out = 0
            for j in bits_of(y):
                out ^= prows[x][j]
            return out

        ok = True
        for (a, b), subset in rows:
            c = a ^ b
            if pd_to_subset(cover, prod(a, b) ^ prod(b, c) ^ prod(a, c)) != subset:
                ok = False
                break
        if ok:
            found.append(L)
    return found
