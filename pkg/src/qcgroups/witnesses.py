"""Explicit excluding characters and machine-checkable exclusion certificates.

For the base-3 circle family with a_0 > 0 and all gaps > 1, the shift
character m*eta_{a_k - 1} with m = 3^(a_l - a_k) +- 2 lies in the polar
of the whole (infinite) family: the finitely many points of the stored
prefix are checked exactly, and every later point x_n (n >= l) evaluates
to 1/3^(a_n - a_l + 2) +- 2/3^(a_n - a_k + 2), a value inside [0, 11/81]
for any continuation keeping gaps > 1.  The 3-adic analogue uses
m*zeta_{a_l + 1}, whose kernel swallows everything from level a_l + 2 up,
so its tail vanishes outright.

An ExclusionCertificate packages such a character with a target point, the
exact evaluation, and a symbolic tail bound; verify_certificate re-checks
all of it bit-exactly without trusting the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

from .circle import UnitRational, in_Tm, parse_rational, render_rational
from .errors import InvalidInputError
from .families import GapSequence
from .padic import PruferChar, canonical_residue, level_for, zeta_eval

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class TailBound:
    """Exact upper bound for sum_{n >= start} |chi(x_n)|, from the closed form."""

    start_index: int
    bound: Fraction

    def as_json(self) -> dict:
        return {"start": self.start_index, "bound": render_rational(self.bound)}


@dataclass(frozen=True)
class ExclusionCertificate:
    """A character in the family polar plus a point it pushes outside T_+."""

    space: Literal["grid", "padic-trunc", "real-line"]
    family_kind: Literal["T3", "J3"]
    family: GapSequence
    character: Union[int, PruferChar]
    target: Union[UnitRational, int]
    evaluation: UnitRational
    rho: int
    k_index: int
    l_index: int
    tail_bound: TailBound
    negated: bool = False

    def as_json(self) -> dict:
        char = (self.character.as_json() if isinstance(self.character, PruferChar)
                else self.character)
        target = (str(self.target) if isinstance(self.target, UnitRational)
                  else self.target)
        return {
            "schema": "qcgroups/1",
            "space": self.space,
            "family": {"kind": self.family_kind, "entries": list(self.family.entries)},
            "character": char,
            "target": target,
            "evaluation": str(self.evaluation),
            "rho": self.rho,
            "indices": [self.k_index, self.l_index],
            "negated": self.negated,
            "tail_bound": self.tail_bound.as_json(),
        }


def certificate_from_json(data: dict) -> ExclusionCertificate:
    try:
        kind = data["family"]["kind"]
        fam = GapSequence(tuple(int(e) for e in data["family"]["entries"]))
        if kind == "T3":
            character: Union[int, PruferChar] = int(data["character"])
            target: Union[UnitRational, int] = UnitRational.from_fraction(
                parse_rational(data["target"]))
        elif kind == "J3":
            character = PruferChar(int(data["character"]["multiplier"]),
                                   int(data["character"]["index"]))
            target = int(data["target"])
        else:
            raise InvalidInputError(f"unknown certificate family {kind!r}")
        tb = TailBound(int(data["tail_bound"]["start"]),
                       parse_rational(data["tail_bound"]["bound"]))
        return ExclusionCertificate(
            space=data["space"], family_kind=kind, family=fam,
            character=character, target=target,
            evaluation=UnitRational.from_fraction(parse_rational(data["evaluation"])),
            rho=int(data["rho"]), k_index=int(data["indices"][0]),
            l_index=int(data["indices"][1]), tail_bound=tb,
            negated=bool(data.get("negated", False)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed certificate: {exc}") from exc


def _require_shift_hypotheses(a: GapSequence, k: int, l: int, sign: int,
                              need_positive_start: bool) -> None:
    a.require_nonnegative()
    if sign not in (1, -1):
        raise InvalidInputError("sign must be +1 or -1")
    if not (0 <= k < l < len(a)):
        raise InvalidInputError("need 0 <= k < l inside the sequence")
    if any(g <= 1 for g in a.gaps):
        raise InvalidInputError("shift characters need every gap above 1")
    if need_positive_start and a.entries[0] <= 0:
        # a_0 = 0 would put the character at the undefined index a_0 - 1
        raise InvalidInputError("circle shift characters need a_0 > 0")


def shift_char_T3(a: GapSequence, k: int, l: int, sign: int) -> int:
    """(3^(a_l - a_k) + 2*sign) * 3^(a_k - 1), verified in the family polar."""
    _require_shift_hypotheses(a, k, l, sign, need_positive_start=True)
    e = a.entries
    m = 3 ** (e[l] - e[k]) + 2 * sign
    chi = m * 3 ** (e[k] - 1)
    for an in e:
        if not in_Tm(UnitRational(chi, 3 ** (an + 1)), 1):
            raise RuntimeError("shift character left the polar; implementation bug")
    return chi


def shift_char_J3(a: GapSequence, k: int, l: int, sign: int) -> PruferChar:
    """(3^(a_l - a_k) + 2*sign) * zeta_{a_l + 1}, verified over the truncation."""
    _require_shift_hypotheses(a, k, l, sign, need_positive_start=False)
    e = a.entries
    m = 3 ** (e[l] - e[k]) + 2 * sign
    char = PruferChar(m, e[l] + 1)
    level = max(level_for(a), char.min_level())
    for an in e:
        if not in_Tm(char(3 ** an, level), 1):
            raise RuntimeError("shift character left the polar; implementation bug")
    return char


def tail_bound_T3(a: GapSequence, m: int, k: int, start: int,
                  l: Optional[int] = None) -> TailBound:
    """sum_{n >= start} |chi(x_n)| <= m / (8 * 3^(a_start - a_k)).

    Geometric series with ratio 1/9 from the gap floor 2; indices past
    the stored prefix use the virtual entry a_last + 2*(start - last),
    which only ever underestimates the true entry, so the bound stays
    sound for every admissible continuation.
    """
    a.require_nonnegative()
    if m <= 0:
        raise InvalidInputError("tail bounds need a positive multiplier")
    if not 0 <= k < len(a):
        raise InvalidInputError("character base index out of range")
    if start < 0:
        raise InvalidInputError("start index out of range")
    if l is not None and not k < l < len(a):
        raise InvalidInputError("need k < l inside the sequence")
    last = len(a) - 1
    for n in range(start, last):
        if a.gaps[n] <= 1:
            raise InvalidInputError("tail needs gaps above 1 from the start index on")
    if start <= last:
        a_start = a.entries[start]
    else:
        a_start = a.entries[last] + 2 * (start - last)
    return TailBound(start, Fraction(m, 8 * 3 ** (a_start - a.entries[k])))


def _normalized_epsilon(a: GapSequence, epsilon: Sequence[int]) -> tuple[tuple[int, ...], list[int], bool]:
    eps = tuple(int(x) for x in epsilon)
    if len(eps) != len(a):
        raise InvalidInputError("coefficient vector must match the sequence length")
    if any(x not in (-1, 0, 1) for x in eps):
        raise InvalidInputError("coefficients must lie in {-1,0,1}")
    nz = [i for i, x in enumerate(eps) if x]
    if len(nz) < 2:
        raise InvalidInputError(
            "need at least two nonzero coefficients (single terms are family points)")
    negated = eps[nz[0]] == -1
    if negated:
        eps = tuple(-x for x in eps)
    return eps, nz, negated


def exclusion_T3(a: GapSequence, epsilon: Sequence[int]) -> ExclusionCertificate:
    """Certificate excluding sum eps_n 3^-(a_n+1) from the circle family hull.

    The evaluation satisfies chi(x) = rho/3 + 2/3^(a_l - a_k + 2) + chi(x')
    exactly, and the tail bound keeps the norm above 1/4 for any
    continuation of the family with gaps > 1.
    """
    eps, nz, negated = _normalized_epsilon(a, epsilon)
    e = a.entries
    n0, n1 = nz[0], nz[1]
    rho = eps[n1]
    chi = shift_char_T3(a, n0, n1, rho)
    m = 3 ** (e[n1] - e[n0]) + 2 * rho

    target = UnitRational(0)
    for i, x in enumerate(eps):
        if x:
            target = target + x * UnitRational(1, 3 ** (e[i] + 1))
    evaluation = target * chi

    remainder = sum((eps[i] * Fraction(m, 3 ** (e[i] - e[n0] + 2)) for i in nz[2:]),
                    Fraction(0))
    closed = Fraction(rho, 3) + Fraction(2, 3 ** (e[n1] - e[n0] + 2)) + remainder
    if UnitRational.from_fraction(closed) != evaluation:
        raise RuntimeError("closed-form evaluation mismatch; implementation bug")

    start = nz[2] if len(nz) > 2 else len(a)
    tb = tail_bound_T3(a, m, n0, start, l=n1)
    if evaluation.norm() <= QUARTER:
        raise RuntimeError("evaluation landed inside T_+; implementation bug")
    return ExclusionCertificate(
        space="grid", family_kind="T3", family=a, character=chi, target=target,
        evaluation=evaluation, rho=rho, k_index=n0, l_index=n1,
        tail_bound=tb, negated=negated)


def exclusion_J3(a: GapSequence, epsilon: Sequence[int]) -> ExclusionCertificate:
    """Certificate excluding sum eps_n 3^(a_n) from the 3-adic family hull.

    chi = (rho*3^(a_l - a_k) + 2) * zeta_{a_l + 1}; every term from the
    third nonzero coefficient on dies in the kernel, so the evaluation is
    exactly rho/3 + 2/3^(a_l - a_k + 2) and the tail bound is zero.
    """
    eps, nz, negated = _normalized_epsilon(a, epsilon)
    e = a.entries
    n0, n1 = nz[0], nz[1]
    rho = eps[n1]
    shift_char_J3(a, n0, n1, rho)  # verifies the polar membership hypotheses
    m_signed = rho * 3 ** (e[n1] - e[n0]) + 2
    char = PruferChar(m_signed, e[n1] + 1)

    raw = sum(eps[i] * 3 ** e[i] for i in nz)
    level = level_for(a)
    target = canonical_residue(raw, level)
    evaluation = UnitRational(m_signed * raw, 3 ** (e[n1] + 2))

    closed = Fraction(rho, 3) + Fraction(2, 3 ** (e[n1] - e[n0] + 2))
    if UnitRational.from_fraction(closed) != evaluation:
        raise RuntimeError("closed-form evaluation mismatch; implementation bug")
    if evaluation.norm() <= QUARTER:
        raise RuntimeError("evaluation landed inside T_+; implementation bug")
    start = nz[2] if len(nz) > 2 else len(a)
    return ExclusionCertificate(
        space="padic-trunc", family_kind="J3", family=a, character=char,
        target=target, evaluation=evaluation, rho=rho, k_index=n0, l_index=n1,
        tail_bound=TailBound(start, Fraction(0)), negated=negated)


DemoCase = Literal["h12-a", "h12-b", "h12-c", "two-x", "J-two-x"]


def membership_demo(case: DemoCase, n: int, *, h: int | None = None,
                    h1: int | None = None, h2: int | None = None,
                    x: int | None = None, sign: int = 1) -> tuple[frozenset[int], int]:
    """Generating set and target for the abstract membership facts in Z(n).

    The caller checks target in hull(generators); degenerate parameters
    (h = 0 and friends) are allowed and give trivially-included targets.
    """
    if n < 1:
        raise InvalidInputError("carrier order must be positive")

    def need(value, name):
        if value is None:
            raise InvalidInputError(f"case {case!r} needs parameter {name}")
        return value % n

    if case == "h12-a":
        if sign not in (1, -1):
            raise InvalidInputError("sign must be +1 or -1")
        a1, a2 = need(h1, "h1"), need(h2, "h2")
        gens = frozenset({a1, (2 * a1) % n, a2, (2 * a2) % n})
        return gens, (a1 + sign * a2) % n
    if case == "h12-b":
        v = need(h, "h")
        return frozenset({v, (3 * v) % n, (6 * v) % n}), (4 * v) % n
    if case == "h12-c":
        v = need(h, "h")
        return frozenset({v, (4 * v) % n, (8 * v) % n}), (5 * v) % n
    if case in ("two-x", "J-two-x"):
        v = need(x, "x")
        if case == "J-two-x":
            # carrier must be a quotient of the p-adic integers, p odd
            if n < 3 or n % 2 == 0:
                raise InvalidInputError("J-two-x needs an odd prime-power carrier")
            p = min(f for f in range(2, n + 1) if n % f == 0)
            q = n
            while q % p == 0:
                q //= p
            if q != 1:
                raise InvalidInputError("J-two-x needs an odd prime-power carrier")
        return frozenset({v, (3 * v) % n}), (2 * v) % n
    raise InvalidInputError(f"unknown demo case {case!r}")


def verify_certificate(cert: ExclusionCertificate, truncation: int | None = None) -> bool:
    """Re-check a certificate from scratch; False on any mathematical mismatch.

    Checks: the character maps every prefix point into T_+, the stored
    evaluation re-computes exactly, its norm exceeds 1/4, the tail bound
    re-derives bit-exactly, and the closed-form part stays outside T_+
    even after adding the tail (so the certificate covers every
    continuation of the family with gaps > 1).
    """
    a = cert.family
    e = a.entries
    if not (0 <= cert.k_index < cert.l_index < len(e)) or cert.rho not in (1, -1):
        return False
    if cert.family_kind == "T3":
        if not isinstance(cert.character, int) or not isinstance(cert.target, UnitRational):
            raise InvalidInputError("T3 certificate needs an integer character")
        terms = len(a) if truncation is None else truncation
        if terms < cert.l_index + 1:
            raise InvalidInputError(
                f"truncation {terms} too short; need at least {cert.l_index + 1} terms")
        terms = min(terms, len(a))
        if any(g <= 1 for g in a.gaps) or e[0] <= 0:
            return False
        for an in e[:terms]:
            if not in_Tm(UnitRational(cert.character, 3 ** (an + 1)), 1):
                return False
        if cert.target * cert.character != cert.evaluation:
            return False
        if cert.evaluation.norm() <= QUARTER:
            return False
        m = 3 ** (e[cert.l_index] - e[cert.k_index]) + 2 * cert.rho
        try:
            expected = tail_bound_T3(a, m, cert.k_index, cert.tail_bound.start_index,
                                     l=cert.l_index)
        except InvalidInputError:
            return False
        if expected.bound != cert.tail_bound.bound:
            return False
        # distance of rho/3 from T_+ must survive the explicit and tail parts
        slack = Fraction(2, 3 ** (e[cert.l_index] - e[cert.k_index] + 2)) + expected.bound
        return slack < Fraction(1, 3) - QUARTER

    if cert.family_kind == "J3":
        if not isinstance(cert.character, PruferChar) or not isinstance(cert.target, int):
            raise InvalidInputError("J3 certificate needs a Pruefer character")
        level = level_for(a) if truncation is None else truncation
        if level < cert.character.min_level() or level < e[-1] + 1:
            raise InvalidInputError(
                f"truncation level {level} too short; need at least "
                f"{max(cert.character.min_level(), e[-1] + 1)}")
        if any(g <= 1 for g in a.gaps):
            return False
        for an in e:
            if not in_Tm(cert.character(3 ** an, level), 1):
                return False
        value = zeta_eval(cert.character.multiplier, cert.character.index,
                          cert.target, level)
        if value != cert.evaluation:
            return False
        if cert.evaluation.norm() <= QUARTER:
            return False
        return cert.tail_bound.bound == 0

    raise InvalidInputError(f"unknown certificate kind {cert.family_kind!r}")
