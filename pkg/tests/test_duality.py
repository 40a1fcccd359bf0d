from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcgroups.circle import UnitRational, in_Tm, tm_interval
from qcgroups.duality import (CyclicSet, GridSet, MultiplyBy, QuotientBy,
                              char_polar_intervals, check_two_x_equivalence,
                              hull_cyclic, hull_grid, hull_residues,
                              is_quasi_convex, polar_cyclic, polar_grid,
                              polar_residues, pushforward_check,
                              trace_subgroup, unit_fraction_chain_check)
from qcgroups.engine import BitGrid
from qcgroups.errors import InvalidInputError

F = Fraction


def grid(n, *points):
    return GridSet(n, frozenset(points))


def zn(n, *elements):
    return CyclicSet(n, frozenset(elements))


# ------------------------------------------------------------------ polars


def test_polar_grid_examples():
    assert polar_grid(grid(8, 0, 1, 7)).residues == frozenset({0, 1, 2, 6, 7})
    assert polar_grid(grid(4, 1, 3)).residues == frozenset({0, 1, 3})
    assert polar_grid(grid(1, 0)).residues == frozenset({0})
    assert polar_cyclic(zn(12, 1, 3)).elements == frozenset({0, 1, 3, 9, 11})


def test_polar_of_empty_set_rejected():
    with pytest.raises(InvalidInputError):
        polar_residues(8, [])


def test_polar_is_symmetric_and_contains_zero():
    for n in (5, 12, 27):
        for e in (1, 2, n - 1):
            P = polar_residues(n, [e])
            assert 0 in P
            assert all((-k) % n in P for k in P)


# ------------------------------------------------------------------- hulls


def test_hull_grid_examples():
    rep = hull_grid(grid(8, 1))
    assert rep.hull.points == frozenset({0, 1, 7})
    assert is_quasi_convex(grid(16, 0, 1, 15, 4, 12))
    rep27 = hull_grid(grid(27, 0, 3, 24, 1, 26))
    assert 2 in rep27.hull.points           # 2/27 contaminates the hull
    assert not rep27.is_quasi_convex()


def test_hull_cyclic_examples():
    assert 4 in hull_cyclic(zn(24, 1, 3, 6)).hull.elements
    assert 5 in hull_cyclic(zn(64, 1, 4, 8)).hull.elements
    rep = hull_cyclic(zn(12, 1, 3))
    assert 2 not in rep.hull.elements
    assert rep.witnesses[2] == 3            # smallest excluding character


def test_trivial_quasi_convex_sets():
    for n in (1, 5, 16):
        assert is_quasi_convex(grid(n, 0))
    assert is_quasi_convex(zn(7, 0))


def test_witnesses_reverify():
    for E in [grid(27, 0, 3, 24, 1, 26), grid(12, 1, 5), zn(24, 1, 3, 6)]:
        rep = hull_grid(E) if isinstance(E, GridSet) else hull_cyclic(E)
        n = E.modulus if isinstance(E, GridSet) else E.order
        pts = E.points if isinstance(E, GridSet) else E.elements
        polar = polar_residues(n, pts)
        hull_pts = rep.hull.points if isinstance(E, GridSet) else rep.hull.elements
        assert set(rep.witnesses) == set(range(n)) - set(hull_pts)
        for p, k in rep.witnesses.items():
            assert k in polar
            assert not in_Tm(UnitRational(k * p, n), 1)


@given(st.integers(min_value=1, max_value=40), st.data())
@settings(max_examples=120, deadline=None)
def test_hull_closure_properties(n, data):
    elems = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=4))
    hull, _ = hull_residues(n, elems)
    assert set(elems) <= hull                       # extensive
    assert 0 in hull
    assert all((-p) % n in hull for p in hull)      # symmetric
    again, _ = hull_residues(n, hull)
    assert again == hull                            # idempotent
    extra = data.draw(st.integers(0, n - 1))
    bigger, _ = hull_residues(n, set(elems) | {extra})
    assert hull <= bigger                           # monotone


@given(st.integers(min_value=1, max_value=36), st.data())
@settings(max_examples=80, deadline=None)
def test_bit_engine_matches_reference(n, data):
    elems = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=4))
    bg = BitGrid(n)
    bits = bg.set_bits(elems)
    assert set(bg.hull_set(elems)) == set(hull_residues(n, elems)[0])
    polar_ref = polar_residues(n, elems)
    assert {k for k in range(n) if (bg.polar_bits(bits) >> k) & 1} == set(polar_ref)


# ------------------------------------------------------------ functoriality


def test_pushforward_examples():
    assert pushforward_check(grid(32, 0, 1, 31, 4, 28), MultiplyBy(8))
    assert pushforward_check(zn(27, 1, 3), QuotientBy(3))
    with pytest.raises(InvalidInputError):
        pushforward_check(grid(8, 1), QuotientBy(2))
    with pytest.raises(InvalidInputError):
        pushforward_check(zn(27, 1), QuotientBy(5))


def test_pushforward_small_exhaustive():
    for n in (6, 9, 12):
        universe = list(range(n))
        for size in (1, 2):
            for E in combinations(universe, size):
                S = zn(n, *E)
                for k in range(n):
                    assert pushforward_check(S, MultiplyBy(k))
                for d in (2, 3):
                    if n % d == 0:
                        assert pushforward_check(S, QuotientBy(d))


# ------------------------------------------------------------------ traces


def test_trace_subgroup_examples():
    quarter_orbit = {UnitRational(0), UnitRational(1, 4),
                     UnitRational(1, 2), UnitRational(-1, 4)}
    assert trace_subgroup(4, 1) == quarter_orbit
    assert trace_subgroup(12, 3) == quarter_orbit
    assert len(trace_subgroup(9, 2)) == 9


def test_two_x_equivalence_examples():
    rep = check_two_x_equivalence(9, 1)
    assert rep.all_agree() and rep.hull_membership
    rep = check_two_x_equivalence(12, 1)
    assert rep.all_agree() and not rep.hull_membership
    rep = check_two_x_equivalence(5, 0)
    assert rep.all_agree() and rep.hull_membership


def test_two_x_equivalence_small_sweep():
    for n in range(1, 61):
        for x in range(n):
            assert check_two_x_equivalence(n, x).all_agree()


# ------------------------------------------------------------------ chains


def test_unit_fraction_chain_examples():
    from qcgroups.families import DivisibleChain
    assert unit_fraction_chain_check([4, 8, 32])
    assert unit_fraction_chain_check([2, 4])
    assert unit_fraction_chain_check(DivisibleChain((2, 4)))
    with pytest.raises(InvalidInputError):
        unit_fraction_chain_check([4, 6])
    with pytest.raises(InvalidInputError):
        unit_fraction_chain_check([1, 2])


def test_unit_fraction_chain_exhaustive():
    chains = []
    for b0 in range(2, 65):
        for q1 in range(2, 512 // b0 + 1):
            b1 = b0 * q1
            for q2 in range(2, 512 // b1 + 1):
                b2 = b1 * q2
                for q3 in range(2, 512 // b2 + 1):
                    chains.append([b0, b1, b2, b2 * q3])
    assert chains
    assert all(unit_fraction_chain_check(c) for c in chains)


# ---------------------------------------------------------- interval polars


def test_char_polar_interval_constants():
    from qcgroups.circle import RationalIntervalUnion
    assert char_polar_intervals([1, 3, 6]) == tm_interval(6)
    quarter = F(1, 4)
    # {1,3,4}: the two isolated points +-1/4 plus T_4
    expected_134 = tm_interval(4).union(
        RationalIntervalUnion.from_pairs([(quarter, quarter),
                                          (-quarter, -quarter)]))
    assert char_polar_intervals([1, 3, 4]) == expected_134
    assert char_polar_intervals([1]) == tm_interval(1)
    assert char_polar_intervals([]).contains(F(1, 2))


@given(st.sets(st.integers(0, 12), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_char_polar_matches_pointwise(ks):
    region = char_polar_intervals(ks)
    for j in range(-30, 31):
        x = UnitRational(j, 60)
        expected = all(in_Tm(k * x, 1) for k in ks)
        assert region.contains_mod1(F(j, 60)) == expected
