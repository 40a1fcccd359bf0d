"""Exact arithmetic on the circle group T = R/Z and on unions of rational intervals.

A point of T is stored as the canonical rational representative in the
window (-1/2, 1/2]: equality, ordering and the distance-to-zero norm are
all read off the canonical numerator/denominator pair.  All arithmetic is
integer arithmetic on arbitrary-precision ints; there is no floating
point anywhere in this module.

The small target sets T_m are the closed arcs of radius 1/(4m) around 0
(T_+ is T_1).  They are closed: boundary points such as 1/4 belong to
T_+, and several downstream verdicts depend on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidInputError

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=False)
class UnitRational:
    """A rational point of T, reduced, with numerator in (-den/2, den/2]."""

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if den == 0:
            raise InvalidInputError("zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        if 2 * num > den:
            num -= den
        g = gcd(abs(num), den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "UnitRational":
        f = Fraction(q)
        return cls(f.numerator, f.denominator)

    def as_fraction(self) -> Fraction:
        """Canonical representative as an exact rational in (-1/2, 1/2]."""
        return Fraction(self.num, self.den)

    def norm(self) -> Fraction:
        """Distance from 0 in T; always in [0, 1/2]."""
        return Fraction(abs(self.num), self.den)

    def in_Tm(self, m: int) -> bool:
        """Membership in the closed arc T_m = [-1/(4m), 1/(4m)]."""
        if m < 1:
            raise InvalidInputError("T_m needs m >= 1")
        return 4 * m * abs(self.num) <= self.den

    def __add__(self, other: "UnitRational") -> "UnitRational":
        return UnitRational(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def __sub__(self, other: "UnitRational") -> "UnitRational":
        return self + (-other)

    def __neg__(self) -> "UnitRational":
        return UnitRational(-self.num, self.den)

    def __mul__(self, k: int) -> "UnitRational":
        if not isinstance(k, int):
            return NotImplemented
        return UnitRational(self.num * k, self.den)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return render_rational(Fraction(self.num, self.den))


def make_unit_rational(p: int, q: int) -> UnitRational:
    """Canonical reduced representative of p/q mod 1 (q must be nonzero)."""
    return UnitRational(p, q)


def norm(x: UnitRational) -> Fraction:
    return x.norm()


def in_Tm(x: UnitRational, m: int) -> bool:
    return x.in_Tm(m)


def render_rational(q: Fraction | int) -> str:
    f = Fraction(q)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational: {text!r}") from exc


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


@dataclass(frozen=True)
class RationalIntervalUnion:
    """A finite union of closed intervals with exact rational endpoints.

    Kept normalized: intervals sorted, pairwise disjoint, non-touching
    (touching closed intervals are merged on construction).
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Fraction | int]]) -> "RationalIntervalUnion":
        cleaned = []
        for lo, hi in pairs:
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise InvalidInputError(f"interval with lo > hi: [{lo}, {hi}]")
            cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                prev_lo, prev_hi = merged[-1]
                merged[-1] = (prev_lo, max(prev_hi, hi))
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @classmethod
    def empty(cls) -> "RationalIntervalUnion":
        return cls(())

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, q: Fraction | int) -> bool:
        q = Fraction(q)
        return any(lo <= q <= hi for lo, hi in self.intervals)

    def contains_mod1(self, q: Fraction | int) -> bool:
        """Membership of a circle point; the window endpoints +-1/2 are identified."""
        x = UnitRational.from_fraction(Fraction(q)).as_fraction()
        if self.contains(x):
            return True
        return x == HALF and self.contains(-HALF)

    def union(self, other: "RationalIntervalUnion") -> "RationalIntervalUnion":
        return RationalIntervalUnion.from_pairs(self.intervals + other.intervals)

    def intersect(self, other: "RationalIntervalUnion") -> "RationalIntervalUnion":
        # two-pointer sweep over the sorted disjoint interval lists
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return RationalIntervalUnion.from_pairs(out)

    def complement_within(self, lo: Fraction | int, hi: Fraction | int) -> "RationalIntervalUnion":
        """Closure of [lo, hi] minus this union (endpoints kept closed)."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise InvalidInputError("empty window")
        out = []
        cursor = lo
        for ilo, ihi in self.intervals:
            if ihi < lo or ilo > hi:
                continue
            if ilo > cursor:
                out.append((cursor, ilo))
            cursor = max(cursor, ihi)
        if cursor < hi:
            out.append((cursor, hi))
        return RationalIntervalUnion.from_pairs(out)

    def scale(self, r: Fraction | int) -> "RationalIntervalUnion":
        r = Fraction(r)
        if r == 0:
            raise InvalidInputError("scale by zero")
        if r > 0:
            return RationalIntervalUnion.from_pairs(
                (lo * r, hi * r) for lo, hi in self.intervals)
        return RationalIntervalUnion.from_pairs(
            (hi * r, lo * r) for lo, hi in self.intervals)

    def translate(self, r: Fraction | int) -> "RationalIntervalUnion":
        r = Fraction(r)
        return RationalIntervalUnion.from_pairs(
            (lo + r, hi + r) for lo, hi in self.intervals)

    def reduce_mod_1(self) -> "RationalIntervalUnion":
        """Image mod 1 inside the window (-1/2, 1/2].

        A wrapped piece is stored with left endpoint -1/2, which denotes
        the same circle point as +1/2; circle membership queries must go
        through contains_mod1.
        """
        out: list[tuple[Fraction, Fraction]] = []
        for lo, hi in self.intervals:
            if hi - lo >= 1:
                out.append((-HALF, HALF))
                continue
            t = _ceil(lo - HALF)  # lo - t in (-1/2, 1/2]
            lo2, hi2 = lo - t, hi - t
            if hi2 <= HALF:
                out.append((lo2, hi2))
            else:
                out.append((lo2, HALF))
                out.append((-HALF, hi2 - 1))
        return RationalIntervalUnion.from_pairs(out)

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def __str__(self) -> str:
        if not self.intervals:
            return "∅"
        return "∪".join(f"[{render_rational(lo)},{render_rational(hi)}]"
                        for lo, hi in self.intervals)

    def as_json(self) -> list[list[str]]:
        return [[render_rational(lo), render_rational(hi)] for lo, hi in self.intervals]


def tm_interval(m: int) -> RationalIntervalUnion:
    """T_m as an interval union in window coordinates."""
    if m < 1:
        raise InvalidInputError("T_m needs m >= 1")
    r = Fraction(1, 4 * m)
    return RationalIntervalUnion.from_pairs([(-r, r)])
