"""Admissibility of w2 classes and the parity constraints they put on lambda(Y, E).

Only the mod-2 shadow of admissibility is decidable from the cohomology
ring: a class qualifies here when it is not a cup-square.  Floer's
stronger condition (no torsion integral lift) needs integral data the ring
does not carry, so every report is labelled with the weaker condition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cupring import CupRing, H2Class, eval_u, is_square, k_invariant, square_root
from .gf2core import BitVec, check_vec, parity_dot, to_bitstring
from .klein4 import v_count

ADMISSIBILITY_LABEL = "generalized admissible (w2 is not a cup-square)"


class NotAdmissibleError(ValueError):
    pass


class Applicability(str, enum.Enum):
    CONGRUENCE = "b>=3 congruence"
    EVENNESS = "b=2 evenness assertion"
    VANISHING = "b=1 vanishing assertion"


def admissible_mod2(R: CupRing, x: H2Class) -> bool:
    return not is_square(R, x)


def count_admissible(R: CupRing) -> int:
    """Number of non-square classes, by direct enumeration."""
    return sum(1 for x in range(1 << R.dim) if not is_square(R, x))


def admissible_count_formula(b: int, k: int) -> int:
    return (2**k - 1) * 2 ** (b - k)


@dataclass(frozen=True)
class CassonReport:
    b: int
    k: int
    x: H2Class
    v: int
    divisibility_exponent: int
    parity: int
    applicability: Applicability
    assertion_holds: bool

    def statement(self) -> str:
        if self.applicability is Applicability.CONGRUENCE:
            e = self.divisibility_exponent
            if e == 0:
                return f"lambda(Y,E) = {self.parity} mod 2"
            return (
                f"lambda(Y,E) is divisible by 2^{e} and "
                f"lambda(Y,E)/2^{e} = {self.parity} mod 2"
            )
        if self.applicability is Applicability.EVENNESS:
            return "v is even; no information on lambda(Y,E) mod 2"
        return "v = 0; no information on lambda(Y,E) mod 2"

    def to_json(self) -> dict:
        return {
            "admissibility": ADMISSIBILITY_LABEL,
            "applicability": self.applicability.value,
            "assertion_holds": self.assertion_holds,
            "b": self.b,
            "divisibility_exponent": self.divisibility_exponent,
            "k": self.k,
            "parity": self.parity,
            "statement": self.statement(),
            "v": self.v,
            "x": to_bitstring(self.x, self.b),
        }


def casson_report(R: CupRing, x: H2Class) -> CassonReport:
    """Divisibility and parity constraints on lambda(Y, E) for ``w_2(E) = x``."""
    check_vec(x, R.dim)
    root = square_root(R, x)
    if root is not None:
        raise NotAdmissibleError(
            f"x = {to_bitstring(x, R.dim)} is the cup-square of "
            f"{to_bitstring(root, R.dim)}; it must not be a cup-square"
        )
    b = R.dim
    v = v_count(R, x)
    if b >= 3:
        app, holds = Applicability.CONGRUENCE, True
    elif b == 2:
        app, holds = Applicability.EVENNESS, v % 2 == 0
    else:
        app, holds = Applicability.VANISHING, v == 0
    return CassonReport(
        b=b,
        k=k_invariant(R),
        x=x,
        v=v,
        divisibility_exponent=max(b - 3, 0),
        parity=v % 2,
        applicability=app,
        assertion_holds=holds,
    )


def grading_shift(R: CupRing, x: H2Class, w: BitVec) -> int:
    """Change of the mod 8 Floer grading under the action of ``w``: 0 or 4."""
    check_vec(x, R.dim), check_vec(w, R.dim)
    return 4 * ((parity_dot(x, w) + eval_u(R, w, w, w)) % 2) % 8
