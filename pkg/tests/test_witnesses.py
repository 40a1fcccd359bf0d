import dataclasses
from fractions import Fraction
from itertools import product

import pytest

from qcgroups.circle import UnitRational, in_Tm
from qcgroups.duality import hull_contains, hull_grid, hull_residues
from qcgroups.errors import InvalidInputError
from qcgroups.families import GapSequence, points_K3
from qcgroups.padic import L3_truncate, PruferChar, level_for
from qcgroups.witnesses import (TailBound, certificate_from_json,
                                exclusion_J3, exclusion_T3, membership_demo,
                                shift_char_J3, shift_char_T3, tail_bound_T3,
                                verify_certificate)

GS = GapSequence.of
F = Fraction


def gap2_sequences(max_entry, max_len):
    """All strictly increasing sequences with every gap >= 2."""
    out = []

    def grow(prefix):
        if prefix:
            out.append(GapSequence(tuple(prefix)))
        if len(prefix) == max_len:
            return
        start = prefix[-1] + 2 if prefix else 0
        for nxt in range(start, max_entry + 1):
            grow(prefix + [nxt])

    grow([])
    return out


# ------------------------------------------------------------ shift chars


def test_shift_char_values():
    assert shift_char_T3(GS(1, 3), 0, 1, +1) == 11
    assert shift_char_T3(GS(1, 3), 0, 1, -1) == 7
    assert shift_char_T3(GS(2, 4, 6), 1, 2, +1) == 297
    assert shift_char_J3(GS(0, 2), 0, 1, +1) == PruferChar(11, 3)
    assert shift_char_J3(GS(0, 2), 0, 1, -1) == PruferChar(7, 3)
    assert shift_char_J3(GS(1, 4), 0, 1, +1) == PruferChar(29, 5)


def test_shift_char_hypotheses():
    with pytest.raises(InvalidInputError):
        shift_char_T3(GS(0, 2), 0, 1, +1)      # a_0 = 0: eta_{-1} undefined
    with pytest.raises(InvalidInputError):
        shift_char_T3(GS(1, 2, 4), 0, 1, +1)   # unit gap
    with pytest.raises(InvalidInputError):
        shift_char_T3(GS(1, 3), 1, 1, +1)
    with pytest.raises(InvalidInputError):
        shift_char_J3(GS(0, 2), 0, 1, 2)


def test_shift_chars_live_in_the_polar():
    for a in gap2_sequences(10, 4):
        if len(a) < 2:
            continue
        for k in range(len(a) - 1):
            for l in range(k + 1, len(a)):
                for sign in (+1, -1):
                    if a.entries[0] > 0:
                        chi = shift_char_T3(a, k, l, sign)
                        for an in a.entries:
                            assert in_Tm(UnitRational(chi, 3 ** (an + 1)), 1)
                        m = 3 ** (a.entries[l] - a.entries[k]) + 2 * sign
                        tb = tail_bound_T3(a, m, k, l + 1, l=l)
                        assert tb.bound < F(1, 4)
                    char = shift_char_J3(a, k, l, sign)
                    level = max(level_for(a), char.min_level())
                    for an in a.entries:
                        assert in_Tm(char(3 ** an, level), 1)


# ------------------------------------------------------------ tail bounds


def test_tail_bound_values():
    assert tail_bound_T3(GS(1, 3, 5), 11, 0, 2, l=1).bound == F(11, 648)
    # virtual continuation with gap floor 2 gives the same bound
    assert tail_bound_T3(GS(1, 3), 11, 0, 2, l=1).bound == F(11, 648)
    # a first tail term of 1/9 sums to at most 1/8
    assert tail_bound_T3(GS(2, 4), 1, 0, 0).bound == F(1, 8)


def test_tail_bound_validation():
    with pytest.raises(InvalidInputError):
        tail_bound_T3(GS(1, 3), 0, 0, 2)
    with pytest.raises(InvalidInputError):
        tail_bound_T3(GS(1, 3), 11, 5, 2)
    with pytest.raises(InvalidInputError):
        tail_bound_T3(GS(1, 3, 4), 11, 0, 1)   # unit gap at/after the start
    # a unit gap strictly before the start does not affect the tail
    assert tail_bound_T3(GS(1, 2, 4), 11, 0, 1).bound == F(11, 24)


def test_tail_bound_dominates_actual_tail():
    for a in gap2_sequences(9, 4):
        if len(a) < 3 or a.entries[0] == 0:
            continue
        k, l, start = 0, 1, 2
        m = 3 ** (a.entries[l] - a.entries[k]) + 2
        chi = m * 3 ** (a.entries[k] - 1)
        actual = sum(F(chi, 3 ** (an + 1)) for an in a.entries[start:])
        assert actual <= tail_bound_T3(a, m, k, start, l=l).bound


# ------------------------------------------------------------ certificates


def test_exclusion_T3_examples():
    c = exclusion_T3(GS(1, 3), [1, 1])
    assert c.character == 11
    assert c.target == UnitRational(10, 81)
    assert c.evaluation == UnitRational(29, 81)
    assert c.evaluation.norm() > F(1, 4)
    assert verify_certificate(c)

    c = exclusion_T3(GS(1, 3), [1, -1])
    assert c.character == 7
    assert c.target == UnitRational(8, 81)
    assert c.evaluation.norm() == F(25, 81)

    c = exclusion_T3(GS(2, 4, 7), [1, 1, 0])
    assert c.character == 33
    assert c.evaluation == UnitRational(29, 81)


def test_exclusion_J3_examples():
    c = exclusion_J3(GS(0, 2), [1, 1])
    assert c.character == PruferChar(11, 3)
    assert c.target == 10
    assert c.evaluation == UnitRational(29, 81)
    assert verify_certificate(c, 4)

    c = exclusion_J3(GS(0, 2), [1, -1])
    assert c.character == PruferChar(-7, 3)
    assert c.evaluation.norm() == F(25, 81)

    c = exclusion_J3(GS(1, 4), [1, 1])
    assert c.character == PruferChar(29, 5)
    assert c.evaluation == UnitRational(83, 243)
    assert c.evaluation.as_fraction() == F(1, 3) + F(2, 243)


def test_exclusion_validation():
    with pytest.raises(InvalidInputError):
        exclusion_T3(GS(1, 3), [1, 0])         # single nonzero coefficient
    with pytest.raises(InvalidInputError):
        exclusion_T3(GS(1, 3), [1])            # wrong length
    with pytest.raises(InvalidInputError):
        exclusion_T3(GS(1, 3), [1, 2])
    with pytest.raises(InvalidInputError):
        exclusion_T3(GS(0, 2), [1, 1])         # a_0 = 0 on the circle side
    with pytest.raises(InvalidInputError):
        exclusion_J3(GS(0, 1, 3), [1, 1, 0])   # unit gap


def test_leading_sign_normalization():
    plus = exclusion_T3(GS(1, 3), [1, 1])
    minus = exclusion_T3(GS(1, 3), [-1, -1])
    assert minus.negated and not plus.negated
    assert minus.target == plus.target
    assert minus.evaluation == plus.evaluation
    j3 = exclusion_J3(GS(0, 2), [-1, 1])
    assert j3.negated and j3.rho == -1
    assert j3.target == -8         # certifies the normalized point 1 - 9


def test_certificates_exclude_targets_from_truncated_hulls():
    a = GS(1, 3, 6)
    E = points_K3(a)
    rep = hull_grid(E)
    n = E.modulus
    for eps in product((-1, 0, 1), repeat=3):
        if sum(1 for e in eps if e) < 2:
            continue
        cert = exclusion_T3(a, eps)
        assert verify_certificate(cert)
        res = (cert.target.num * (n // cert.target.den)) % n
        assert res not in rep.hull.points

    aj = GS(0, 3)
    L = L3_truncate(aj, 5)
    hull, _ = hull_residues(L.order, L.elements)
    for eps in product((-1, 0, 1), repeat=2):
        if sum(1 for e in eps if e) < 2:
            continue
        cert = exclusion_J3(aj, eps)
        assert verify_certificate(cert, 5)
        assert cert.target % L.order not in hull


def test_verify_rejects_tampering():
    cert = exclusion_T3(GS(1, 3), [1, 1])
    assert not verify_certificate(dataclasses.replace(cert, character=5))
    assert not verify_certificate(
        dataclasses.replace(cert, evaluation=UnitRational(1, 81)))
    assert not verify_certificate(
        dataclasses.replace(cert, tail_bound=TailBound(2, F(1, 5))))
    j = exclusion_J3(GS(0, 2), [1, 1])
    assert not verify_certificate(
        dataclasses.replace(j, character=PruferChar(5, 3)))
    assert not verify_certificate(
        dataclasses.replace(j, tail_bound=TailBound(2, F(1, 9))))


def test_verify_truncation_preconditions():
    cert = exclusion_T3(GS(1, 3, 5), [0, 1, 1])
    with pytest.raises(InvalidInputError):
        verify_certificate(cert, 2)        # finite part needs index l = 2
    j = exclusion_J3(GS(0, 2), [1, 1])
    with pytest.raises(InvalidInputError):
        verify_certificate(j, 3)           # zeta_3 needs level >= 4


def test_certificate_json_round_trip():
    for cert in (exclusion_T3(GS(1, 3, 5), [1, 0, -1]),
                 exclusion_J3(GS(0, 2, 4), [1, -1, 1])):
        data = cert.as_json()
        back = certificate_from_json(data)
        assert back == cert
        assert verify_certificate(back)
    with pytest.raises(InvalidInputError):
        certificate_from_json({"schema": "qcgroups/1"})


# ------------------------------------------------------------------ demos


def test_membership_demos():
    gens, target = membership_demo("h12-b", 24, h=1)
    assert (gens, target) == (frozenset({1, 3, 6}), 4)
    assert hull_contains(24, gens, target)

    gens, target = membership_demo("h12-c", 64, h=1)
    assert (gens, target) == (frozenset({1, 4, 8}), 5)
    assert hull_contains(64, gens, target)

    gens, target = membership_demo("J-two-x", 3 ** 5, x=1)
    assert (gens, target) == (frozenset({1, 3}), 2)
    assert hull_contains(3 ** 5, gens, target)

    gens, target = membership_demo("h12-a", 40, h1=3, h2=5, sign=-1)
    assert target == (3 - 5) % 40
    assert hull_contains(40, gens, target)

    gens, target = membership_demo("two-x", 9, x=0)
    assert target == 0 and hull_contains(9, gens, target)


def test_membership_demo_validation():
    with pytest.raises(InvalidInputError):
        membership_demo("h12-b", 24)                 # missing h
    with pytest.raises(InvalidInputError):
        membership_demo("J-two-x", 12, x=1)          # 12 is not an odd prime power
    with pytest.raises(InvalidInputError):
        membership_demo("h12-a", 24, h1=1, h2=2, sign=3)
    with pytest.raises(InvalidInputError):
        membership_demo("unknown", 24, h=1)


def test_demo_targets_in_hulls_across_carriers():
    for n in range(1, 101):
        gens, target = membership_demo("h12-b", n, h=1)
        assert hull_contains(n, gens, target)
        gens, target = membership_demo("h12-c", n, h=1)
        assert hull_contains(n, gens, target)
