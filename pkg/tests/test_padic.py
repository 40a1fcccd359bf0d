from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcgroups.circle import UnitRational, in_Tm
from qcgroups.errors import InvalidInputError
from qcgroups.families import GapSequence
from qcgroups.padic import (BalancedDigits, PadicTruncGroup, PruferChar,
                            balanced_digits, balanced_digits_circle,
                            canonical_residue, compute_Jm, digits_to_circle,
                            digits_to_residue, epsilon_forms, eta_eval,
                            L3_truncate, leading_digit_lemma_check, level_for,
                            q12_set, zeta_eval)

GS = GapSequence.of
F = Fraction


def test_group_canonical_residues():
    g = PadicTruncGroup(3)
    assert g.order == 27
    assert g.canonical(13) == 13
    assert g.canonical(14) == -13
    assert g.canonical(26) == -1
    assert canonical_residue(2, 1) == -1


def test_group_validation():
    with pytest.raises(InvalidInputError):
        PadicTruncGroup(0)
    with pytest.raises(InvalidInputError):
        PadicTruncGroup(3, p=4)


def test_zeta_examples():
    assert zeta_eval(1, 0, 1, 4) == UnitRational(1, 3)
    assert zeta_eval(11, 3, 10, 4) == UnitRational(29, 81)
    # at k = a_n the value is 2/3, outside T_+
    v = zeta_eval(2, 2, 9, 4)
    assert v == UnitRational(2, 3) and not in_Tm(v, 1)
    with pytest.raises(InvalidInputError):
        zeta_eval(1, 4, 1, 4)


def test_eta_examples():
    assert eta_eval(1, 2, UnitRational(1, 9)) == UnitRational(0)
    assert eta_eval(11, 0, UnitRational(10, 81)) == UnitRational(29, 81)
    assert eta_eval(1, 1, UnitRational(1, 27)) == UnitRational(1, 9)


@given(st.integers(-10, 10), st.integers(0, 5),
       st.integers(-400, 400), st.integers(-400, 400))
def test_zeta_is_a_homomorphism(m, k, x, y):
    level = 6
    lhs = zeta_eval(m, k, x + y, level)
    assert lhs == zeta_eval(m, k, x, level) + zeta_eval(m, k, y, level)


def test_prufer_char_call():
    chi = PruferChar(11, 3)
    assert chi(10, 4) == UnitRational(29, 81)
    assert chi.min_level() == 4
    with pytest.raises(InvalidInputError):
        chi(10, 3)
    with pytest.raises(InvalidInputError):
        PruferChar(1, -1)


# --------------------------------------------------------------------- J_m


def test_compute_Jm_examples():
    assert compute_Jm(GS(1, 3), 1, 4, "T") == frozenset({0, 2, 4})
    assert compute_Jm(GS(0, 2, 4), 2, 5, "J") == frozenset({1, 3, 5})
    assert compute_Jm(GS(1, 3), 2, 4, "T") == frozenset({0, 2, 4})


def test_compute_Jm_validation():
    with pytest.raises(InvalidInputError):
        compute_Jm(GS(1, 3), 3, 4, "T")
    with pytest.raises(InvalidInputError):
        compute_Jm(GS(0, 2, 4), 2, 5, "J", level=4)   # needs level >= 6
    with pytest.raises(InvalidInputError):
        compute_Jm(GS(1, 3), 1, 4, "X")


def test_Jm_complement_property():
    for entries in [(1, 3), (2, 4), (0, 2, 4), (1, 4, 6), (3, 5, 8)]:
        a = GapSequence(entries)
        k_max = entries[-1] + 3
        expected = frozenset(set(range(k_max + 1)) - set(entries))
        for side in ("T", "J"):
            assert compute_Jm(a, 1, k_max, side) == expected
            assert compute_Jm(a, 2, k_max, side) == expected


# ----------------------------------------------------------------- digits


def test_balanced_digit_examples():
    assert balanced_digits(4, 3).digits == (1, 1, 0)
    assert balanced_digits(2, 3).digits == (-1, 1, 0)
    assert balanced_digits_circle(UnitRational(2, 9)).digits == (1, -1)
    assert str(balanced_digits(2, 3)) == "-+0"


def test_balanced_digit_round_trip_and_uniqueness():
    level = 5
    seen = {}
    for x in range(3 ** level):
        d = balanced_digits(x, level)
        assert len(d.digits) == level
        assert digits_to_residue(d) % 3 ** level == x
        assert d.digits not in seen
        seen[d.digits] = x


def test_circle_digits_round_trip():
    s = 5
    for j in range(3 ** s):
        y = UnitRational(j, 3 ** s)
        assert digits_to_circle(balanced_digits_circle(y)) == y


def test_circle_digits_rejects_non_power_of_three():
    with pytest.raises(InvalidInputError):
        balanced_digits_circle(UnitRational(1, 6))
    with pytest.raises(InvalidInputError):
        BalancedDigits((0, 2))


def test_leading_digit_lemma():
    assert leading_digit_lemma_check(UnitRational(1, 9))
    assert leading_digit_lemma_check(UnitRational(1, 3))
    assert all(leading_digit_lemma_check(UnitRational(j, 3 ** 8))
               for j in range(3 ** 8))


# ------------------------------------------------------------ epsilon / Q12


def test_epsilon_forms_examples():
    assert epsilon_forms(GS(0, 2), "J", 3) == frozenset(
        {0, 1, -1, 9, -9, 10, -10, 8, -8})
    assert epsilon_forms(GS(1), "T", 2) == frozenset(
        {UnitRational(0), UnitRational(1, 9), UnitRational(-1, 9)})
    forms = epsilon_forms(GS(1, 3), "T", 4)
    assert len(forms) == 9
    assert UnitRational(10, 81) in forms and UnitRational(8, 81) in forms


def test_epsilon_forms_validation():
    with pytest.raises(InvalidInputError):
        epsilon_forms(GS(1, 3), "T", 3)
    with pytest.raises(InvalidInputError):
        epsilon_forms(GS(0, 5), "J", 5)


def test_q12_equals_epsilon_forms_when_gaps_exceed_one():
    for entries in [(1, 3), (0, 2), (2, 4), (1, 4)]:
        a = GapSequence(entries)
        L = entries[-1] + 1
        assert q12_set(a, "T", L) == epsilon_forms(a, "T", L)
        for M in (entries[-1] + 1, entries[-1] + 2):
            assert q12_set(a, "J", M) == epsilon_forms(a, "J", M)


def test_q12_unconstrained_carrier():
    # a covers every index below the level: no constraints survive
    g = PadicTruncGroup(3)
    assert q12_set(GS(0, 1, 2), "J", 3) == frozenset(
        g.canonical(x) for x in range(27))


# ------------------------------------------------------------------- L3


def test_L3_truncate():
    assert L3_truncate(GS(0, 2), 4).elements == frozenset({0, 1, 9, 72, 80})
    big = L3_truncate(GS(0, 2, 4), 7)
    assert big.order == 3 ** 7
    assert {81, 3 ** 7 - 81} <= big.elements
    with pytest.raises(InvalidInputError, match="smallest admissible level is 7"):
        L3_truncate(GS(0, 5), 4)
    assert level_for(GS(0, 2, 4)) == 6
