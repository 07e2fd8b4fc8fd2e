"""JSON ring specifications (schema ``cupring/1``) and canonical output."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from . import builders
from .builders import BranchedCover, LinkData, SeifertData
from .cupring import CupRing, RingError
from .gf2core import MAX_DIM

SCHEMA = "cupring/1"


class SpecError(ValueError):
    """The ring specification could not be parsed or validated."""


@dataclass
class RingSpec:
    ring: CupRing
    body: Dict[str, Any]
    cover: Optional[BranchedCover] = None
    expect: Dict[str, Any] = field(default_factory=dict)


def _int(body, key):
    v = body.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SpecError(f"field {key!r} must be an integer, got {v!r}")
    return v


def _build(body: Dict[str, Any], strict: bool, allow_asymmetric: bool):
    """Returns ``(ring, cover_or_None)``."""
    if not isinstance(body, dict):
        raise SpecError(f"ring body must be an object, got {body!r}")
    kind = body.get("type")
    if kind == "explicit":
        dim = _int(body, "dim")
        if not 0 <= dim <= MAX_DIM:
            raise SpecError(f"dim {dim} outside 0..{MAX_DIM}")
        u = body.get("u", [])
        if not isinstance(u, list):
            raise SpecError("'u' must be a list of index triples")
        for t in u:
            if not isinstance(t, list) or len(t) != 3 or not all(
                isinstance(i, int) and 0 <= i < dim for i in t
            ):
                raise SpecError(f"bad triple {t!r} for dim {dim}")
        return CupRing.from_triples(dim, u, strict=strict), None
    if kind == "tensor":
        # raw ordered entries, not symmetrized; exists to exercise validation
        dim = _int(body, "dim")
        entries = frozenset(tuple(t) for t in body.get("entries", []))
        ring = CupRing(dim, entries)
        if not ring.is_symmetric() and not allow_asymmetric:
            raise SpecError("tensor entries are not symmetric under index permutations")
        if not ring.postnikov_check() and strict and not allow_asymmetric:
            raise SpecError(f"Postnikov condition fails at {ring.postnikov_violations()}")
        return ring, None
    if kind == "free":
        return builders.free(_int(body, "n")), None
    if kind == "rp3":
        return builders.rp3(), None
    if kind == "torus3":
        return builders.torus3(), None
    if kind == "connect_sum":
        parts = body.get("parts")
        if not isinstance(parts, list):
            raise SpecError("'parts' must be a list of ring bodies")
        rings = [_build(p, strict, allow_asymmetric)[0] for p in parts]
        if sum(r.dim for r in rings) > MAX_DIM:
            raise SpecError(f"connected sum exceeds dimension {MAX_DIM}")
        return builders.connect_sum(rings), None
    if kind == "borromean":
        fr = body.get("framings")
        if not isinstance(fr, list) or len(fr) != 3:
            raise SpecError("'framings' must be a list of three framing classes")
        return builders.borromean(*fr), None
    if kind == "seifert":
        cone = tuple(tuple(p) for p in body.get("cone", []))
        if any(len(p) != 2 for p in cone):
            raise SpecError("'cone' entries must be [alpha, beta] pairs")
        s = SeifertData(_int(body, "g"), _int(body, "b"), cone)
        return builders.seifert_ring(s, bool(body.get("c_square_is_ab", False))), None
    if kind == "branched_cover":
        n = _int(body, "components")
        lk = body.get("lk")
        if not isinstance(lk, list) or len(lk) != n:
            raise SpecError(f"'lk' must be an {n}x{n} matrix")
        cover = builders.branched_double_cover(LinkData.from_matrix(lk))
        return cover.ring, cover
    raise SpecError(f"unknown ring type {kind!r}")


def parse_spec(
    obj: Dict[str, Any], strict: bool = True, allow_asymmetric: bool = False
) -> RingSpec:
    if not isinstance(obj, dict):
        raise SpecError("specification must be a JSON object")
    if obj.get("schema") != SCHEMA:
        raise SpecError(f"missing or wrong schema tag (expected {SCHEMA!r})")
    body = {k: v for k, v in obj.items() if k not in ("schema", "expect")}
    try:
        ring, cover = _build(body, strict, allow_asymmetric)
    except SpecError:
        raise
    except (RingError, ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from exc
    return RingSpec(ring, body, cover, obj.get("expect", {}))


def load_spec(source: str, **kw) -> RingSpec:
    """Read a spec from a file path, ``-`` for stdin, or an inline JSON object."""
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip().startswith("{"):
            text = source
        else:
            text = Path(source).read_text(encoding="utf-8")
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec {source!r}: {exc}") from exc
    return parse_spec(obj, **kw)


def explicit_spec(ring: CupRing) -> Dict[str, Any]:
    return {"schema": SCHEMA, **ring.to_json()}


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, integers only."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
