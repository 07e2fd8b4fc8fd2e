import pytest
from hypothesis import given, settings

from kleinfour import builders
from kleinfour.casson import (
    Applicability,
    NotAdmissibleError,
    admissible_count_formula,
    admissible_mod2,
    casson_report,
    count_admissible,
    grading_shift,
)
from kleinfour.cupring import cup, eval_u, is_square, k_invariant
from kleinfour.gf2core import parity_dot
from kleinfour.klein4 import v_count
from kleinfour.verify import theorem_violation
from kleinfour.klein4 import v_table

from conftest import family_rings, postnikov_rings

A, B, C = 0b001, 0b010, 0b100


def test_admissible_examples():
    R = builders.borromean(2, 2, 4)
    assert admissible_mod2(R, cup(R, A, B))
    assert not admissible_mod2(R, 0)
    F = builders.free(3)
    assert all(admissible_mod2(F, x) for x in range(1, 8))


def test_count_admissible_examples():
    assert count_admissible(builders.borromean(2, 2, 4)) == 4
    assert count_admissible(builders.rp3()) == 0
    for n in range(5):
        assert count_admissible(builders.free(n)) == 2**n - 1


@given(postnikov_rings())
def test_count_admissible_formula(R):
    assert count_admissible(R) == admissible_count_formula(R.dim, k_invariant(R))


def test_report_l8n8():
    R = builders.branched_double_cover(builders.L8N8).ring
    for x in range(8):
        if is_square(R, x):
            continue
        rep = casson_report(R, x)
        assert (rep.b, rep.k, rep.v, rep.parity) == (3, 1, 1, 1)
        assert rep.applicability is Applicability.CONGRUENCE
        assert rep.statement() == "lambda(Y,E) = 1 mod 2"


def test_report_low_b():
    rep = casson_report(builders.free(2), 0b01)
    assert rep.b == 2 and rep.v == 0 and rep.assertion_holds
    assert rep.applicability is Applicability.EVENNESS
    rep = casson_report(builders.free(1), 1)
    assert rep.v == 0 and rep.applicability is Applicability.VANISHING and rep.assertion_holds


def test_report_divisibility_exponent():
    R = builders.connect_sum([builders.borromean(2, 2, 4), builders.rp3(), builders.rp3()])
    x = cup(R, A, B)
    rep = casson_report(R, x)
    assert rep.divisibility_exponent == 2
    assert rep.v == 1 and rep.parity == 1
    assert "divisible by 2^2" in rep.statement()


def test_report_rejects_squares():
    R = builders.borromean(2, 4, 4)
    with pytest.raises(NotAdmissibleError, match="cup-square"):
        casson_report(R, 0b001)


def test_grading_shift_examples():
    T = builders.torus3()
    assert grading_shift(T, C, 0) == 0
    assert grading_shift(T, C, A) == 0
    assert grading_shift(T, A, A) == 4
    assert grading_shift(builders.rp3(), 0, 1) == 4


@given(postnikov_rings())
def test_grading_shift_pointwise(R):
    for x in range(1 << R.dim):
        assert grading_shift(R, x, 0) == 0
        for w in range(1 << min(R.dim, 3)):
            expected = 4 * ((parity_dot(x, w) + eval_u(R, w, w, w)) % 2)
            assert grading_shift(R, x, w) == expected


@settings(max_examples=80)
@given(family_rings(max_dim=9))
def test_parity_theorem_on_realizable_rings(R):
    assert theorem_violation(R, v_table(R)) is None


def test_parity_theorem_k4_example():
    R = builders.connect_sum([builders.free(2), builders.torus3()])
    assert k_invariant(R) == 5
    assert all(v_count(R, x) % 2 == 0 for x in range(32) if not is_square(R, x))
