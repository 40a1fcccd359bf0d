"""Decidable polars and quasi-convex hulls for finite sets in T-grids and Z(n).

For E inside the grid (1/N)Z/Z the character group of T is Z, and every
multiple of N annihilates E, so N.Z sits inside the polar E^>.  A point x
of the hull must then have its whole subgroup <N.x> inside T_+, and the
only subgroup of T contained in T_+ is {0}; hence N.x = 0 and the hull
stays inside the (1/N)-grid.  The polar itself is a union of residue
classes mod N, so both the polar and the hull are finite, exact integer
computations.  The same arithmetic serves Z(n) with the pairing
chi_k(x) = kx/n.

The hot loops run on int64 numpy vectors; moduli are capped well below
the overflow bound so every product is exact (a pure-python path covers
anything larger).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

import numpy as np

from .circle import HALF, RationalIntervalUnion, UnitRational
from .errors import InvalidInputError

# products k*j with k, j < n must fit in int64
_NUMPY_SAFE_MODULUS = 3_000_000_000


def _cond_ok(value: int, n: int) -> bool:
    """k*j proxy: residue r of the product; true iff r/n lies in T_+."""
    r = value % n
    return 4 * min(r, n - r) <= n


def polar_residues(n: int, elems: Iterable[int]) -> frozenset[int]:
    """{k mod n : k*e/n in T_+ for every e}. Raises on an empty input set."""
    elems = sorted({e % n for e in elems})
    if n < 1:
        raise InvalidInputError("modulus must be positive")
    if not elems:
        raise InvalidInputError("polar of the empty set is not defined here")
    if n <= _NUMPY_SAFE_MODULUS:
        k = np.arange(n, dtype=np.int64)
        mask = np.ones(n, dtype=bool)
        for e in elems:
            r = (k * e) % n
            np.logical_and(mask, 4 * np.minimum(r, n - r) <= n, out=mask)
        return frozenset(int(v) for v in np.nonzero(mask)[0])
    return frozenset(k for k in range(n)
                     if all(_cond_ok(k * e, n) for e in elems))


def hull_residues(n: int, elems: Iterable[int]) -> tuple[frozenset[int], dict[int, int]]:
    """Quasi-convex hull inside Z(n)/grid, with a witness for every excluded point.

    Witness selection is deterministic: the smallest character residue in
    the polar that moves the point outside T_+.
    """
    elems = sorted({e % n for e in elems})
    polar = sorted(polar_residues(n, elems))
    if n <= _NUMPY_SAFE_MODULUS:
        j = np.arange(n, dtype=np.int64)
        alive = np.ones(n, dtype=bool)
        witness: dict[int, int] = {}
        for k in polar:
            r = (j * k) % n
            ok = 4 * np.minimum(r, n - r) <= n
            newly = alive & ~ok
            if newly.any():
                for p in np.nonzero(newly)[0]:
                    witness[int(p)] = k
                alive &= ok
        hull = frozenset(int(v) for v in np.nonzero(alive)[0])
        return hull, witness
    hull_set = set()
    witness = {}
    for p in range(n):
        for k in polar:
            if not _cond_ok(k * p, n):
                witness[p] = k
                break
        else:
            hull_set.add(p)
    return frozenset(hull_set), witness


def hull_contains(n: int, gens: Iterable[int], target: int) -> bool:
    """target in Q(gens) without materializing the full hull."""
    target %= n
    polar = polar_residues(n, gens)
    return all(_cond_ok(k * target, n) for k in polar)


@dataclass(frozen=True)
class GridSet:
    """A finite subset of the grid (1/N)Z/Z, stored as residues mod N."""

    modulus: int
    points: frozenset[int]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidInputError("grid modulus must be positive")
        object.__setattr__(self, "points",
                           frozenset(p % self.modulus for p in self.points))

    @classmethod
    def from_rationals(cls, values: Iterable[Fraction], modulus: int | None = None) -> "GridSet":
        vals = [UnitRational.from_fraction(v) for v in values]
        need = 1
        for v in vals:
            need = need * v.den // gcd(need, v.den)
        if modulus is None:
            modulus = need
        elif modulus % need:
            raise InvalidInputError(
                f"grid modulus {modulus} does not hold denominators (need multiple of {need})")
        return cls(modulus, frozenset((v.num * (modulus // v.den)) % modulus for v in vals))

    def rationals(self) -> frozenset[UnitRational]:
        return frozenset(UnitRational(p, self.modulus) for p in self.points)

    def as_json(self) -> dict:
        return {"modulus": self.modulus,
                "points": sorted(str(UnitRational(p, self.modulus)) for p in self.points)}


@dataclass(frozen=True)
class CyclicSet:
    """A finite subset of Z(n)."""

    order: int
    elements: frozenset[int]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InvalidInputError("group order must be positive")
        object.__setattr__(self, "elements",
                           frozenset(e % self.order for e in self.elements))

    def as_json(self) -> dict:
        return {"order": self.order, "elements": sorted(self.elements)}


@dataclass(frozen=True)
class PolarSet:
    """A union of residue classes mod N inside Z = the dual of T."""

    modulus: int
    residues: frozenset[int]

    def as_json(self) -> dict:
        return {"modulus": self.modulus, "residues": sorted(self.residues)}


CarrierSet = Union[GridSet, CyclicSet]


@dataclass(frozen=True)
class HullReport:
    """Hull of a finite set plus one verified excluding character per outside point."""

    input_set: CarrierSet
    hull: CarrierSet
    witnesses: dict[int, int]

    def is_quasi_convex(self) -> bool:
        if isinstance(self.input_set, GridSet):
            return self.input_set.points == self.hull.points
        return self.input_set.elements == self.hull.elements

    def as_json(self) -> dict:
        if isinstance(self.input_set, GridSet):
            n = self.input_set.modulus
            return {
                "kind": "grid",
                "modulus": n,
                "input": sorted(str(UnitRational(p, n)) for p in self.input_set.points),
                "hull": sorted(str(UnitRational(p, n)) for p in self.hull.points),
                "witnesses": {str(UnitRational(p, n)): k
                              for p, k in sorted(self.witnesses.items())},
            }
        n = self.input_set.order
        return {
            "kind": "cyclic",
            "order": n,
            "input": sorted(self.input_set.elements),
            "hull": sorted(self.hull.elements),
            "witnesses": {str(p): k for p, k in sorted(self.witnesses.items())},
        }


def polar_grid(E: GridSet) -> PolarSet:
    return PolarSet(E.modulus, polar_residues(E.modulus, E.points))


def hull_grid(E: GridSet) -> HullReport:
    hull, wit = hull_residues(E.modulus, E.points)
    return HullReport(E, GridSet(E.modulus, hull), wit)


def polar_cyclic(E: CyclicSet) -> CyclicSet:
    return CyclicSet(E.order, polar_residues(E.order, E.elements))


def hull_cyclic(E: CyclicSet) -> HullReport:
    hull, wit = hull_residues(E.order, E.elements)
    return HullReport(E, CyclicSet(E.order, hull), wit)


def is_quasi_convex(E: CarrierSet) -> bool:
    if isinstance(E, GridSet):
        return hull_grid(E).is_quasi_convex()
    return hull_cyclic(E).is_quasi_convex()


@dataclass(frozen=True)
class MultiplyBy:
    """x -> k*x on a grid or on Z(n)."""

    k: int


@dataclass(frozen=True)
class QuotientBy:
    """Z(n) -> Z(n/d), x -> x mod n/d; requires d | n."""

    d: int


Hom = Union[MultiplyBy, QuotientBy]


def pushforward_check(E: CarrierSet, f: Hom) -> bool:
    """True iff f(hull(E)) is contained in hull(f(E)).

    This inclusion is a theorem for continuous homomorphisms, so a False
    return flags an implementation bug rather than a mathematical fact.
    """
    if isinstance(E, GridSet):
        n, pts = E.modulus, E.points
    else:
        n, pts = E.order, E.elements
    if isinstance(f, MultiplyBy):
        image = frozenset((f.k * p) % n for p in pts)
        src_hull, _ = hull_residues(n, pts)
        dst_hull, _ = hull_residues(n, image)
        return all((f.k * h) % n in dst_hull for h in src_hull)
    if isinstance(f, QuotientBy):
        if not isinstance(E, CyclicSet):
            raise InvalidInputError("quotient map applies to cyclic carriers")
        if f.d < 1 or n % f.d:
            raise InvalidInputError(f"{f.d} does not divide the order {n}")
        m = n // f.d
        image = frozenset(p % m for p in pts)
        src_hull, _ = hull_residues(n, pts)
        dst_hull, _ = hull_residues(m, image)
        return all(h % m in dst_hull for h in src_hull)
    raise InvalidInputError(f"unknown homomorphism descriptor: {f!r}")


def trace_subgroup(n: int, x: int) -> frozenset[UnitRational]:
    """Tr_x(Z(n)) = {chi(x) : chi in the dual} = the subgroup <x/n> of T."""
    if n < 1:
        raise InvalidInputError("group order must be positive")
    return frozenset(UnitRational(k * x, n) for k in range(n))


@dataclass(frozen=True)
class TwoXReport:
    """The four equivalent conditions around 2x in Q({x, 3x})."""

    hull_membership: bool        # 2x in Q(,{x,3x})
    quarter_not_in_trace: bool   # +-1/4 not in Tr_x
    half_not_in_trace2: bool     # 1/2 not in Tr_2x
    no_two_torsion: bool         # Tr_2x has no nonzero 2-torsion

    def all_agree(self) -> bool:
        return (self.hull_membership == self.quarter_not_in_trace
                == self.half_not_in_trace2 == self.no_two_torsion)

    def as_json(self) -> dict:
        return {"i": self.hull_membership, "ii": self.quarter_not_in_trace,
                "iii": self.half_not_in_trace2, "iv": self.no_two_torsion}


def check_two_x_equivalence(n: int, x: int) -> TwoXReport:
    x %= n
    i = hull_contains(n, {x, (3 * x) % n}, (2 * x) % n)
    tr_x = trace_subgroup(n, x)
    quarter = UnitRational(1, 4)
    ii = quarter not in tr_x and -quarter not in tr_x
    tr_2x = trace_subgroup(n, (2 * x) % n)
    iii = UnitRational(1, 2) not in tr_2x
    iv = not any(t.num != 0 and (t + t).num == 0 for t in tr_2x)
    return TwoXReport(i, ii, iii, iv)


def unit_fraction_chain_check(b) -> bool:
    """No sum 1/b_i + 1/b_j with i != j lands back in {1/b_n}.

    Accepts any integer sequence or a families.DivisibleChain.
    """
    terms = list(getattr(b, "terms", b))
    if not terms or terms[0] <= 1:
        raise InvalidInputError("chain must start above 1")
    for u, v in zip(terms, terms[1:]):
        if v <= u or v % u:
            raise InvalidInputError("chain must be increasing and divisible")
    values = [Fraction(1, t) for t in terms]
    member = set(values)
    for i, vi in enumerate(values):
        for j in range(i, len(values)):
            if vi + values[j] in member and i != j:
                return False
    return True


def char_polar_intervals(ks: Iterable[int]) -> RationalIntervalUnion:
    """{x in T : k*x in T_+ for all k}, as exact intervals in (-1/2, 1/2].

    This is the polar (inside T) of a finite set of integer characters;
    e.g. {1,3,4} gives {+-1/4} union T_4 and {1,4,8} gives
    T_8 union +-(15/64 + T_16).
    """
    acc = RationalIntervalUnion.from_pairs([(-HALF, HALF)])
    for k in sorted({abs(int(k)) for k in ks}):
        if k == 0:
            continue
        pieces = []
        for j in range(-(k // 2) - 1, k // 2 + 2):
            lo = Fraction(4 * j - 1, 4 * k)
            hi = Fraction(4 * j + 1, 4 * k)
            pieces.append((max(lo, -HALF), min(hi, HALF)))
        pieces = [(lo, hi) for lo, hi in pieces if lo <= hi]
        acc = acc.intersect(RationalIntervalUnion.from_pairs(pieces))
    return acc
