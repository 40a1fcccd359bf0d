"""Truncated 3-adic integers Z(3^M), Pruefer-dual characters and balanced digits.

Everything happens in a finite quotient at an explicit level M; there is
no infinite-precision p-adic arithmetic here.  Elements carry the
canonical signed residue in (-3^M/2, 3^M/2] (3^M is odd, so that window
is exactly the integers of absolute value <= (3^M - 1)/2), which is also
the range represented by M balanced-ternary digits.

The character zeta_k sends 1 to 3^-(k+1); it factors through Z(3^M)
precisely when k + 1 <= M.  On the circle side eta_k is multiplication
by 3^k.  Both are evaluated exactly as UnitRationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .circle import UnitRational, in_Tm
from .duality import CyclicSet
from .errors import InvalidInputError
from .families import GapSequence

Side = Literal["T", "J"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PadicTruncGroup:
    """The quotient Z(p^M) of the p-adic integers, p = 3 by default."""

    level: int
    p: int = 3

    def __post_init__(self) -> None:
        if self.level < 1:
            raise InvalidInputError("level must be >= 1")
        if not _is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not prime")

    @property
    def order(self) -> int:
        return self.p ** self.level

    def canonical(self, x: int) -> int:
        """Signed residue in (-order/2, order/2]."""
        r = x % self.order
        return r if 2 * r <= self.order else r - self.order

    def elements(self) -> range:
        return range(self.order)


def canonical_residue(x: int, level: int, p: int = 3) -> int:
    return PadicTruncGroup(level, p).canonical(x)


@dataclass(frozen=True)
class PruferChar:
    """The character m * zeta_index of the 3-adic integers.

    zeta_k(1) = 3^-(k+1); the character factors through Z(3^M) iff
    index + 1 <= M.
    """

    multiplier: int
    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise InvalidInputError("character index must be nonnegative")

    def min_level(self) -> int:
        return self.index + 1

    def __call__(self, x: int, level: int) -> UnitRational:
        return zeta_eval(self.multiplier, self.index, x, level)

    def as_json(self) -> dict:
        return {"multiplier": self.multiplier, "index": self.index}


def zeta_eval(m: int, k: int, x: int, level: int, p: int = 3) -> UnitRational:
    """m * zeta_k at x inside Z(p^level): exactly m*x / p^(k+1) mod 1."""
    if k < 0:
        raise InvalidInputError("character index must be nonnegative")
    if k + 1 > level:
        raise InvalidInputError(
            f"zeta_{k} does not factor through level {level} (need level >= {k + 1})")
    return UnitRational(m * x, p ** (k + 1))


def eta_eval(m: int, k: int, x: UnitRational) -> UnitRational:
    """m * eta_k at x in T: exactly m * 3^k * x mod 1."""
    if k < 0:
        raise InvalidInputError("character index must be nonnegative")
    return x * (m * 3 ** k)


def level_for(a: GapSequence) -> int:
    """Smallest truncation level through which the witness characters factor."""
    a.require_nonnegative()
    return a.entries[-1] + 2


@dataclass(frozen=True)
class BalancedDigits:
    """Digits in {-1, 0, 1}; positional meaning is fixed by the producer.

    For Z(3^M) elements the tuple is (c_0, ..., c_{M-1}) with
    x = sum c_i 3^i; for 3-power-denominator circle points it is
    (c_1, ..., c_s) with y = sum c_i / 3^i.
    """

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d not in (-1, 0, 1) for d in self.digits):
            raise InvalidInputError("balanced digits must lie in {-1,0,1}")

    def __str__(self) -> str:
        return "".join({-1: "-", 0: "0", 1: "+"}[d] for d in self.digits)


def balanced_digits(x: int, level: int, p: int = 3) -> BalancedDigits:
    """Unique balanced representation of x in Z(3^level), low digit first."""
    if p != 3:
        raise InvalidInputError("balanced digits are base-3 only")
    v = canonical_residue(x, level)
    out = []
    for _ in range(level):
        r = (v + 1) % 3 - 1
        out.append(r)
        v = (v - r) // 3
    assert v == 0, "signed residue must be exhausted by `level` digits"
    return BalancedDigits(tuple(out))


def digits_to_residue(d: BalancedDigits) -> int:
    return sum(c * 3 ** i for i, c in enumerate(d.digits))


def balanced_digits_circle(y: UnitRational) -> BalancedDigits:
    """Digits (c_1, ..., c_s) with y = sum c_i / 3^i; denominator must be 3^s."""
    den, s = y.den, 0
    while den % 3 == 0:
        den //= 3
        s += 1
    if den != 1:
        raise InvalidInputError(f"denominator {y.den} is not a power of 3")
    if s == 0:
        return BalancedDigits(())    # the only integer point of the window is 0
    low_first = balanced_digits(y.num, s).digits
    return BalancedDigits(tuple(reversed(low_first)))


def digits_to_circle(d: BalancedDigits) -> UnitRational:
    s = len(d.digits)
    return UnitRational(sum(c * 3 ** (s - 1 - i) for i, c in enumerate(d.digits)), 3 ** s)


def leading_digit_lemma_check(y: UnitRational) -> bool:
    """(y in T_+ and 2y in T_+)  =>  first balanced digit of y is 0.

    Property probe: must come back True for every 3-power-denominator y.
    """
    if not (in_Tm(y, 1) and in_Tm(y + y, 1)):
        return True
    digits = balanced_digits_circle(y).digits
    return not digits or digits[0] == 0


def compute_Jm(a: GapSequence, m: int, k_max: int, side: Side,
               level: int | None = None) -> frozenset[int]:
    """{k <= k_max : m * (character k) maps every family point into T_+}.

    side "T" pairs m*eta_k against the points 3^-(a_n+1); side "J" pairs
    m*zeta_k against 3^(a_n) inside Z(3^level).  For m in {1, 2} the
    result is the complement of the entries of `a` in [0, k_max].
    """
    if m not in (1, 2):
        raise InvalidInputError("J_m is computed for m in {1, 2} only")
    if k_max < 0:
        raise InvalidInputError("k_max must be nonnegative")
    a.require_nonnegative()
    out = set()
    if side == "T":
        points = [UnitRational(1, 3 ** (an + 1)) for an in a.entries]
        for k in range(k_max + 1):
            if all(in_Tm(eta_eval(m, k, x), 1) for x in points):
                out.add(k)
    elif side == "J":
        needed = max(a.entries[-1] + 1, k_max + 1)
        if level is None:
            level = max(level_for(a), k_max + 1)
        if level < needed:
            raise InvalidInputError(
                f"truncation level {level} too short; need level >= {needed}")
        ys = [3 ** an for an in a.entries]
        for k in range(k_max + 1):
            if all(in_Tm(zeta_eval(m, k, y, level), 1) for y in ys):
                out.add(k)
    else:
        raise InvalidInputError(f"unknown side {side!r}")
    return frozenset(out)


def epsilon_forms(a: GapSequence, side: Side, exponent: int) -> frozenset:
    """All sums sum_n eps_n * (family point), eps_n in {-1,0,1}.

    side "T": points 3^-(a_n+1) on the grid 3^exponent, returned as
    UnitRationals; side "J": points 3^(a_n) in Z(3^exponent), returned as
    canonical signed residues.  Distinct coefficient vectors never
    collide (balanced-digit uniqueness); this is asserted.
    """
    a.require_nonnegative()
    entries = a.entries
    if side == "T":
        if entries[-1] + 1 > exponent:
            raise InvalidInputError(
                f"grid 3^{exponent} too small; need exponent >= {entries[-1] + 1}")
        points = [UnitRational(1, 3 ** (an + 1)) for an in entries]
        acc = {UnitRational(0)}
        for x in points:
            acc = {s + e * x for s in acc for e in (-1, 0, 1)}
    elif side == "J":
        if entries[-1] > exponent - 1:
            raise InvalidInputError(
                f"carrier Z(3^{exponent}) too small; need exponent >= {entries[-1] + 1}")
        group = PadicTruncGroup(exponent)
        acc = {0}
        for an in entries:
            y = 3 ** an
            acc = {group.canonical(s + e * y) for s in acc for e in (-1, 0, 1)}
    else:
        raise InvalidInputError(f"unknown side {side!r}")
    assert len(acc) == 3 ** len(entries), "epsilon forms must not collide"
    return frozenset(acc)


def q12_set(a: GapSequence, side: Side, exponent: int) -> frozenset:
    """Finite analogue of Q_1 int Q_2: carrier points passing every J_1=J_2 test.

    The test set of indices is {0, ..., exponent-1} minus the entries of
    `a` (characters beyond the carrier resolution act trivially).
    Element types match epsilon_forms for direct comparison.
    """
    a.require_nonnegative()
    entries = set(a.entries)
    ks = [k for k in range(exponent) if k not in entries]
    if side == "T":
        if a.entries[-1] + 1 > exponent:
            raise InvalidInputError(
                f"grid 3^{exponent} too small; need exponent >= {a.entries[-1] + 1}")
        n = 3 ** exponent
        out = set()
        for j in range(n):
            x = UnitRational(j, n)
            if all(in_Tm(eta_eval(1, k, x), 1) and in_Tm(eta_eval(2, k, x), 1)
                   for k in ks):
                out.add(x)
        return frozenset(out)
    if side == "J":
        if a.entries[-1] > exponent - 1:
            raise InvalidInputError(
                f"carrier Z(3^{exponent}) too small; need exponent >= {a.entries[-1] + 1}")
        group = PadicTruncGroup(exponent)
        out = set()
        for x in group.elements():
            if all(in_Tm(zeta_eval(1, k, x, exponent), 1)
                   and in_Tm(zeta_eval(2, k, x, exponent), 1) for k in ks):
                out.add(group.canonical(x))
        return frozenset(out)
    raise InvalidInputError(f"unknown side {side!r}")


def L3_truncate(a: GapSequence, level: int) -> CyclicSet:
    """{0} union {+-3^(a_n)} inside Z(3^level); needs a_n <= level - 2.

    The headroom of one extra digit lets the witness characters
    zeta_{a_l + 1} factor through the truncation.
    """
    a.require_nonnegative()
    if a.entries[-1] > level - 2:
        raise InvalidInputError(
            f"level {level} too small; smallest admissible level is {a.entries[-1] + 2}")
    n = 3 ** level
    elems = {0}
    for an in a.entries:
        y = 3 ** an
        elems.add(y % n)
        elems.add((-y) % n)
    return CyclicSet(n, frozenset(elems))
