"""Exact quasi-convexity computations in R for finite rational sets.

The dual of R is R itself with pairing (y, x) -> yx mod 1, so the polar
of a finite rational set S is a countable union of closed intervals that
repeats with period D, the common denominator of S: shifting y by D moves
every yx by an integer.  One period is stored exactly.

Hull membership is decidable: for z = u/v the shifts k*D*z mod 1 take
finitely many values (multiples of gcd(D*u, v)/v), so z is in the hull
iff z * (one period) + s stays inside T_+ mod 1 for each of those
finitely many shift values s.  Each check is closed-interval arithmetic
with exact rational endpoints.

The full hull is recovered through the circle: scale S into (-1/2, 1/2)
by a power of two, push down to a grid in T, take the grid hull there,
pull the finitely many candidates back and keep the ones member_hull_R
accepts.  The scaling map is an automorphism of R and the projection is
injective on the open window, so this candidate set provably contains
the hull, and the member filter is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .circle import HALF, RationalIntervalUnion, render_rational
from .duality import GridSet, hull_grid
from .errors import InvalidInputError

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class RealFiniteSet:
    """A finite set of exact rationals in R."""

    points: frozenset[Fraction]

    def __post_init__(self) -> None:
        if not self.points:
            raise InvalidInputError("empty set")
        object.__setattr__(self, "points",
                           frozenset(Fraction(p) for p in self.points))

    @classmethod
    def of(cls, *points) -> "RealFiniteSet":
        return cls(frozenset(Fraction(p) for p in points))

    @classmethod
    def from_iterable(cls, points: Iterable) -> "RealFiniteSet":
        return cls(frozenset(Fraction(p) for p in points))

    @property
    def common_denominator(self) -> int:
        d = 1
        for p in self.points:
            d = d * p.denominator // gcd(d, p.denominator)
        return d

    def max_abs(self) -> Fraction:
        return max(abs(p) for p in self.points)

    def as_json(self) -> list[str]:
        return sorted((render_rational(p) for p in self.points),
                      key=lambda s: Fraction(s))


@dataclass(frozen=True)
class PeriodicPolar:
    """A period-D union of closed rational intervals; one period stored on [0, D].

    An interval reaching the right edge D denotes the same points as one
    starting at 0 shifted by the period; contains() accounts for that.
    """

    period: Fraction
    one_period: RationalIntervalUnion

    def contains(self, y: Fraction | int) -> bool:
        r = Fraction(y) % self.period
        return self.one_period.contains(r) or self.one_period.contains(r + self.period)

    def as_json(self) -> dict:
        return {"period": render_rational(self.period),
                "intervals": self.one_period.as_json()}


@dataclass(frozen=True)
class HullMembership:
    """In (witness None) or Out with a polar character y such that yz leaves T_+."""

    inside: bool
    witness: Optional[Fraction] = None

    def as_json(self) -> dict:
        if self.inside:
            return {"membership": "In"}
        return {"membership": "Out", "witness": render_rational(self.witness)}


def polar_R(S: RealFiniteSet) -> PeriodicPolar:
    """{y : yx in T_+ for every x in S}, exactly, one period at a time."""
    nonzero = sorted({abs(p) for p in S.points if p != 0})
    if not nonzero:
        return PeriodicPolar(Fraction(1),
                             RationalIntervalUnion.from_pairs([(0, 1)]))
    D = Fraction(S.common_denominator)
    acc = RationalIntervalUnion.from_pairs([(Fraction(0), D)])
    for x in nonzero:
        c = x * D
        assert c.denominator == 1
        c = c.numerator
        pieces = []
        for j in range(0, c + 1):
            lo = Fraction(4 * j - 1, 4) * D / c
            hi = Fraction(4 * j + 1, 4) * D / c
            pieces.append((max(lo, Fraction(0)), min(hi, D)))
        pieces = [(lo, hi) for lo, hi in pieces if lo <= hi]
        acc = acc.intersect(RationalIntervalUnion.from_pairs(pieces))
    return PeriodicPolar(D, acc)


def _interval_in_Tplus_mod1(A: Fraction, B: Fraction) -> bool:
    """Whole closed [A, B] inside T_+ + Z (requires B - A <= 1/2 to be possible)."""
    if B - A > HALF:
        return False
    t = (A + QUARTER).numerator // (A + QUARTER).denominator  # floor(A + 1/4)
    return A - t >= -QUARTER and B - t <= QUARTER


def _bad_point_in(A: Fraction, B: Fraction) -> Fraction:
    """Some rational in [A, B] landing in the open complement (1/4, 3/4) + Z.

    [A, B] may be degenerate: an isolated polar point whose image misses
    T_+ is its own witness.
    """
    t0 = A.numerator // A.denominator
    for t in (t0 - 1, t0, t0 + 1):
        lo = max(A, t + QUARTER)
        hi = min(B, t + 3 * QUARTER)
        if lo > hi:
            continue
        mid = (lo + hi) / 2
        if t + QUARTER < mid < t + 3 * QUARTER:
            return mid
    raise RuntimeError("no bad point found; implementation bug")


def member_hull_R(S: RealFiniteSet, z: Fraction | int) -> HullMembership:
    """Exact decision of z in Q_R(S), with a re-verified witness on Out."""
    z = Fraction(z)
    if z == 0:
        return HullMembership(True)
    if all(p == 0 for p in S.points):
        w = 1 / (2 * z)
        return HullMembership(False, w)

    polar = polar_R(S)
    D = polar.period
    dz = D * z
    shift_den = dz.denominator          # kD z mod 1 hits j/shift_den, all j
    num_mod = dz.numerator % shift_den
    for j in range(shift_den):
        s = Fraction(j, shift_den)
        if shift_den == 1:
            k_j = 0
        else:
            k_j = (j * pow(num_mod, -1, shift_den)) % shift_den
        for lo, hi in polar.one_period.intervals:
            if z > 0:
                A, B = z * lo + s, z * hi + s
            else:
                A, B = z * hi + s, z * lo + s
            if _interval_in_Tplus_mod1(A, B):
                continue
            w_img = _bad_point_in(A, B)
            y = (w_img - s) / z + k_j * D
            # re-verify before reporting
            assert polar.contains(y), "witness fell outside the polar"
            prod = y * z
            assert not _interval_in_Tplus_mod1(prod, prod), "witness does not exclude"
            return HullMembership(False, y)
    return HullMembership(True)


def scale_into_half(S: RealFiniteSet) -> Fraction:
    """Smallest power-of-two scale 2^-t with alpha * max|S| strictly below 1/2."""
    m = S.max_abs()
    alpha = Fraction(1)
    while alpha * m >= HALF:
        alpha /= 2
    return alpha


def hull_R(S: RealFiniteSet) -> frozenset[Fraction]:
    """Q_R(S), exactly, as a finite set of rationals."""
    if all(p == 0 for p in S.points):
        return frozenset({Fraction(0)})
    alpha = scale_into_half(S)
    scaled = [alpha * p for p in S.points]
    M = S.max_abs()
    grid = GridSet.from_rationals(scaled)
    report = hull_grid(grid)
    out = set()
    for j in sorted(report.hull.points):
        w = Fraction(j, grid.modulus)
        if w > HALF:
            w -= 1
        z = w / alpha
        if abs(z) > M:
            continue
        if member_hull_R(S, z).inside:
            out.add(z)
    missing = S.points - out
    assert not missing, f"hull lost input points: {missing}"
    return frozenset(out)
