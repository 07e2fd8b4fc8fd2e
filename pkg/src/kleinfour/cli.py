"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import List, Optional

from .builders import class_label, f_table, redundant_label, subset_label, triple_label
from .casson import NotAdmissibleError, casson_report, count_admissible
from .cupring import brute_isomorphic, is_square, k_invariant, square, square_image_basis
from .gf2core import MAX_DIM, DimensionError, bits_of, from_bitstring, to_bitstring
from .klein4 import DEFAULT_TABLE_CAP, total_count, v_table
from .spec_io import SpecError, dumps, explicit_spec, load_spec
from .verify import check_family, check_spec

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
PARALLEL_MIN_DIM = 12


class InputError(Exception):
    pass


def _load(args, source=None, **kw):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return load_spec(source or args.spec, strict=not args.no_strict, **kw)
    except (SpecError, DimensionError) as exc:
        raise InputError(str(exc)) from exc


def _parse_x(args, ring) -> Optional[int]:
    if args.x is not None and args.x_square_of is not None:
        raise InputError("give at most one of --x and --x-square-of")
    raw = args.x if args.x is not None else args.x_square_of
    if raw is None:
        return None
    try:
        v, length = from_bitstring(raw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if length != ring.dim:
        raise InputError(f"bit string {raw!r} has length {length}, ring has dimension {ring.dim}")
    return square(ring, v) if args.x_square_of is not None else v


def cmd_info(args) -> int:
    spec = _load(args)
    R = spec.ring
    n = R.dim
    report = {
        "dim": n,
        "k": k_invariant(R),
        "square_subspace_basis": [to_bitstring(v, n) for v in square_image_basis(R)],
        "admissible_count": count_admissible(R),
        "total_klein_four_classes": total_count(n),
        "postnikov": R.postnikov_check(),
    }
    if spec.cover is not None:
        report["basis"] = [f"a{i + 1}" for i in range(n)]
        report["relation"] = "+".join(f"a{i + 1}" for i in range(spec.cover.n)) + "=0"
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        for key in sorted(report):
            val = report[key]
            if isinstance(val, list):
                val = " ".join(val) if val else "-"
            print(f"{key}: {val}")
    return EXIT_OK


def vtable_rows(R, table, only=None):
    n = R.dim
    xs = range(1 << n) if only is None else [only]
    return [
        {
            "x": to_bitstring(x, n),
            "v1": table[x].v1,
            "v2": table[x].v2,
            "v3": table[x].v3,
            "v": table[x].norm,
            "parity": table[x].norm % 2,
            "is_square": is_square(R, x),
        }
        for x in xs
    ]


def vtable_document(R, workers: int = 1, cap=DEFAULT_TABLE_CAP, only=None) -> dict:
    if R.dim < PARALLEL_MIN_DIM:
        workers = 1
    table = v_table(R, cap=cap, workers=workers)
    return {"ring": explicit_spec(R), "rows": vtable_rows(R, table, only)}


def cmd_vtable(args) -> int:
    spec = _load(args)
    R = spec.ring
    cap = DEFAULT_TABLE_CAP
    if R.dim > cap:
        if not args.override_cap:
            raise InputError(f"dimension {R.dim} exceeds {cap}; pass --override-cap to allow up to {MAX_DIM}")
        print(f"warning: dimension {R.dim} table needs about 4^{R.dim} operations", file=sys.stderr)
        cap = MAX_DIM
    doc = vtable_document(R, args.workers, cap, _parse_x(args, R))
    if args.json:
        sys.stdout.write(dumps(doc))
        return EXIT_OK
    print(f"{'x':>{max(R.dim, 1)}}  {'v1':>6} {'v2':>6} {'v3':>3} {'v':>7} par square")
    for row in doc["rows"]:
        print(
            f"{row['x']:>{max(R.dim, 1)}}  {row['v1']:>6} {row['v2']:>6} {row['v3']:>3} "
            f"{row['v']:>7} {row['parity']:>3} {'yes' if row['is_square'] else 'no'}"
        )
    return EXIT_OK


def cmd_casson(args) -> int:
    spec = _load(args)
    x = _parse_x(args, spec.ring)
    if x is None:
        raise InputError("casson needs --x or --x-square-of")
    try:
        rep = casson_report(spec.ring, x)
    except NotAdmissibleError as exc:
        raise InputError(f"not admissible: {exc}") from exc
    if args.json:
        sys.stdout.write(dumps(rep.to_json()))
    else:
        for key, val in sorted(rep.to_json().items()):
            print(f"{key}: {val}")
    return EXIT_OK


def cmd_ftable(args) -> int:
    spec = _load(args)
    cover = spec.cover
    if cover is None:
        raise InputError("ftable needs a branched_cover spec")
    rows = f_table(cover)
    if args.json:
        out = []
        for kt, s in rows:
            out.append({
                "class": [class_label(v) for v in sorted((kt.a, kt.b, kt.c))],
                "class_redundant": [redundant_label(cover, v) for v in sorted((kt.a, kt.b, kt.c))],
                "basis_bits": [bits_of(v) for v in sorted((kt.a, kt.b, kt.c))],
                "subset": sorted(s),
            })
        sys.stdout.write(dumps({"components": cover.n, "rows": out}))
    else:
        for kt, s in rows:
            print(f"f{triple_label(kt)} = {subset_label(s)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.family or args.spec is None:
        n, failure = check_family(args.count, args.seed)
        label = f"family of {n} rings (seed {args.seed})"
    else:
        spec = _load(args, allow_asymmetric=True)
        failure = check_spec(spec)
        label = args.spec
    if failure is None:
        print(f"PASS {label}")
        return EXIT_OK
    print(f"FAIL {label}: {failure.check}: {failure.detail}", file=sys.stderr)
    sys.stdout.write(dumps(failure.reproducer()))
    return EXIT_FAIL


def cmd_total(args) -> int:
    if args.b < 0:
        raise InputError("b must be non-negative")
    print(total_count(args.b))
    return EXIT_OK


def cmd_iso(args) -> int:
    r1 = _load(args, args.spec1).ring
    r2 = _load(args, args.spec2).ring
    try:
        same = brute_isomorphic(r1, r2)
    except DimensionError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        sys.stdout.write(dumps({"isomorphic": same}))
    else:
        print("isomorphic" if same else "not isomorphic")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--no-strict", action="store_true",
                        help="warn instead of failing on Postnikov violations")

    xflags = argparse.ArgumentParser(add_help=False)
    xflags.add_argument("--x", help="class in H^2 as a dual-basis bit string, coordinate 0 first")
    xflags.add_argument("--x-square-of", metavar="VEC", help="use x = VEC^2")

    p = argparse.ArgumentParser(prog="kleinfour", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="ring summary")
    s.add_argument("spec")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("vtable", parents=[common, xflags], help="orbit-refined counts for every x")
    s.add_argument("spec")
    s.add_argument("--override-cap", action="store_true",
                   help=f"allow dimensions above {DEFAULT_TABLE_CAP}")
    s.add_argument("--workers", type=int, default=1,
                   help=f"parallel scan processes (used from dim {PARALLEL_MIN_DIM})")
    s.set_defaults(func=cmd_vtable)

    s = sub.add_parser("casson", parents=[common, xflags], help="constraints on lambda(Y,E)")
    s.add_argument("spec")
    s.set_defaults(func=cmd_casson)

    s = sub.add_parser("ftable", parents=[common], help="f-table of a branched double cover")
    s.add_argument("spec")
    s.set_defaults(func=cmd_ftable)

    s = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    s.add_argument("spec", nargs="?")
    s.add_argument("--family", action="store_true", help="check generated rings")
    s.add_argument("--count", type=int, default=120)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("total", help="number of Klein-four classes for b_1 = B")
    s.add_argument("b", type=int)
    s.set_defaults(func=cmd_total)

    s = sub.add_parser("iso", parents=[common], help="exhaustive isomorphism test, dim <= 4")
    s.add_argument("spec1")
    s.add_argument("spec2")
    s.set_defaults(func=cmd_iso)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
