"""The acceptance suite: every verified claim as one runnable criterion.

Each criterion re-derives its expected values by brute force (polars and
hulls enumerated over grids, cyclic groups, truncated 3-adic carriers or
periodic real polars) and compares them against the closed-form side:
verdicts, necessity reports, shift characters, certificates, tail
bounds.  All checks are exact; there are no tolerances.

Run through the CLI (`qcg verify-paper`) or pytest; both print one
pass/fail line per criterion.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Optional

import numpy as np

from .circle import UnitRational, tm_interval
from .duality import (CyclicSet, GridSet, QuotientBy, check_two_x_equivalence,
                      char_polar_intervals, hull_contains, hull_grid,
                      hull_residues, pushforward_check)
from .engine import BitGrid
from .families import (DivisibleChain, GapSequence, necessary_report_R,
                       necessary_report_T, points_K2, points_K3, points_R2,
                       verdict_R2, verdict_T2)
from .padic import L3_truncate, epsilon_forms, level_for, q12_set, compute_Jm
from .realline import RealFiniteSet, hull_R, member_hull_R
from .witnesses import exclusion_J3, exclusion_T3, verify_certificate


@dataclass
class CriterionResult:
    ident: str
    description: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.ident}: {self.description} [{self.detail}] ({self.seconds:.2f}s)"


def _fail(ident, description, detail, t0) -> CriterionResult:
    return CriterionResult(ident, description, False, detail, time.time() - t0)


def _ok(ident, description, detail, t0) -> CriterionResult:
    return CriterionResult(ident, description, True, detail, time.time() - t0)


def _cond_matrix(n: int) -> np.ndarray:
    ar = np.arange(n, dtype=np.int64)
    r = (ar[:, None] * ar[None, :]) % n
    return 4 * np.minimum(r, n - r) <= n


def criterion_01() -> CriterionResult:
    ident, desc = "criterion-01", "membership lemmas (4h, 5h, h1+-h2) exhaustive on Z(n), n <= 100"
    t0 = time.time()
    pairs = 0
    for n in range(1, 101):
        ar = np.arange(n, dtype=np.int64)
        C = _cond_matrix(n)
        idx = {m: (m * ar) % n for m in (2, 3, 4, 5, 6, 8)}
        polar_b = C & C[:, idx[3]] & C[:, idx[6]]
        if np.any(polar_b & ~C[:, idx[4]]):
            return _fail(ident, desc, f"4h failed at n={n}", t0)
        polar_c = C & C[:, idx[4]] & C[:, idx[8]]
        if np.any(polar_c & ~C[:, idx[5]]):
            return _fail(ident, desc, f"5h failed at n={n}", t0)
        D2 = C & C[:, idx[2]]
        SUM = (ar[:, None] + ar[None, :]) % n
        DIF = (ar[:, None] - ar[None, :]) % n
        for k in range(n):
            row = D2[k]
            pair_polar = row[:, None] & row[None, :]
            ok_k = C[k]
            if np.any(pair_polar & ~(ok_k[SUM] & ok_k[DIF])):
                return _fail(ident, desc, f"h1+-h2 failed at n={n}, k={k}", t0)
        pairs += n * n
    return _ok(ident, desc, f"{pairs} (h1,h2) pairs plus 4h/5h sweeps", t0)


def criterion_02() -> CriterionResult:
    ident, desc = "criterion-02", "four-way equivalence for 2x in Q({x,3x}), all x in Z(n), n <= 200"
    t0 = time.time()
    checked = 0
    for n in range(1, 201):
        for x in range(n):
            rep = check_two_x_equivalence(n, x)
            if not rep.all_agree():
                return _fail(ident, desc, f"disagreement at n={n}, x={x}: {rep}", t0)
            checked += 1
    return _ok(ident, desc, f"{checked} (n,x) pairs", t0)


def criterion_03() -> CriterionResult:
    ident, desc = "criterion-03", "{1,4,8} polar in T equals T_8 u +-(15/64 + T_16) exactly"
    t0 = time.time()
    computed = char_polar_intervals([1, 4, 8])
    shift = Fraction(15, 64)
    expected = (tm_interval(8)
                .union(tm_interval(16).translate(shift))
                .union(tm_interval(16).translate(-shift)))
    if computed != expected:
        return _fail(ident, desc, f"got {computed}, expected {expected}", t0)
    return _ok(ident, desc, str(computed), t0)


def criterion_04() -> CriterionResult:
    ident, desc = "criterion-04", "a=(1,3,5,7): grid-3^9 set quasi-convex; all multi-term forms certified out"
    t0 = time.time()
    a = GapSequence.of(1, 3, 5, 7)
    E = points_K3(a, 3 ** 9)
    rep = hull_grid(E)
    if not rep.is_quasi_convex():
        extra = sorted(rep.hull.points - E.points)[:4]
        return _fail(ident, desc, f"hull gained {extra}", t0)
    n = E.modulus
    certs = 0
    for eps in product((-1, 0, 1), repeat=4):
        if sum(1 for e in eps if e) < 2:
            continue
        cert = exclusion_T3(a, eps)
        if not verify_certificate(cert):
            return _fail(ident, desc, f"certificate failed for eps={eps}", t0)
        e = a.entries
        closed = (Fraction(cert.rho, 3)
                  + Fraction(2, 3 ** (e[cert.l_index] - e[cert.k_index] + 2)))
        # independent closed-form re-derivation
        nz = [i for i, v in enumerate(eps) if v]
        sign = -1 if eps[nz[0]] == -1 else 1
        rem = sum(Fraction(sign * eps[i] * (3 ** (e[cert.l_index] - e[cert.k_index])
                                            + 2 * cert.rho),
                           3 ** (e[i] - e[cert.k_index] + 2)) for i in nz[2:])
        expected_eval = UnitRational.from_fraction(closed + rem)
        if expected_eval != cert.evaluation:
            return _fail(ident, desc, f"evaluation mismatch for eps={eps}", t0)
        target_res = (cert.target.num * (n // cert.target.den)) % n
        if target_res in rep.hull.points:
            return _fail(ident, desc, f"target {cert.target} not excluded", t0)
        certs += 1
    return _ok(ident, desc, f"hull == set on grid 3^9; {certs} certificates verified", t0)


def criterion_05() -> CriterionResult:
    ident, desc = "criterion-05", "base-3 negative cases: a_0=0 translate contamination; unit gap puts 2/27 in the hull"
    t0 = time.time()
    E = points_K3(GapSequence.of(0, 2))
    rep = hull_grid(E)
    translate = UnitRational(1, 3) + UnitRational(1, 27)
    res = (translate.num * (E.modulus // translate.den)) % E.modulus
    if rep.is_quasi_convex() or res not in rep.hull.points or res in E.points:
        return _fail(ident, desc, "translate point 10/27 missing from hull", t0)
    E2 = points_K3(GapSequence.of(1, 2))
    rep2 = hull_grid(E2)
    res2 = (UnitRational(2, 27).num * (27 // 27)) % 27
    if res2 not in rep2.hull.points or res2 in E2.points:
        return _fail(ident, desc, "2/27 missing from hull of {0,+-1/9,+-1/27}", t0)
    return _ok(ident, desc, "both contaminations exhibited on their grids", t0)


def criterion_06() -> CriterionResult:
    ident, desc = "criterion-06", "3-adic side: a=(0,2,4) quasi-convex at level 7 with certificates; a=(0,1) contaminated at levels 2..6"
    t0 = time.time()
    a = GapSequence.of(0, 2, 4)
    L = L3_truncate(a, 7)
    rep = hull_residues(L.order, L.elements)
    if frozenset(rep[0]) != L.elements:
        return _fail(ident, desc, "truncated family not quasi-convex in Z(3^7)", t0)
    certs = 0
    for eps in product((-1, 0, 1), repeat=3):
        if sum(1 for e in eps if e) < 2:
            continue
        cert = exclusion_J3(a, eps)
        if not verify_certificate(cert, 7):
            return _fail(ident, desc, f"certificate failed for eps={eps}", t0)
        raw = sum((-e if cert.negated else e) * 3 ** an
                  for e, an in zip(eps, a.entries))
        if raw % L.order in rep[0]:
            return _fail(ident, desc, f"target for eps={eps} not excluded", t0)
        certs += 1
    for m in range(2, 7):
        n = 3 ** m
        if not hull_contains(n, {1, 3, n - 1, n - 3, 0}, 2):
            return _fail(ident, desc, f"2 missing from hull of {{0,+-1,+-3}} in Z(3^{m})", t0)
    return _ok(ident, desc, f"{certs} certificates verified; contamination at levels 2..6", t0)


def criterion_07() -> CriterionResult:
    ident, desc = "criterion-07", "finite Q1 n Q2 equals the epsilon-form set on both carriers"
    t0 = time.time()
    cases = 0
    for entries in [(1, 3), (1, 3, 5), (0, 2), (0, 2, 4)]:
        a = GapSequence(entries)
        aL = a.entries[-1] + 1
        if q12_set(a, "T", aL) != epsilon_forms(a, "T", aL):
            return _fail(ident, desc, f"T-side mismatch for a={entries}", t0)
        for M in (a.entries[-1] + 1, level_for(a)):
            if q12_set(a, "J", M) != epsilon_forms(a, "J", M):
                return _fail(ident, desc, f"J-side mismatch for a={entries} at level {M}", t0)
        cases += 1
    return _ok(ident, desc, f"{cases} sequences, both carriers", t0)


def criterion_08() -> CriterionResult:
    ident, desc = "criterion-08", "J_1 = J_2 = complement of the sequence, on both carriers"
    t0 = time.time()
    for entries in [(1, 3), (0, 2, 4), (1, 3, 5), (2, 5, 9)]:
        a = GapSequence(entries)
        k_max = a.entries[-1] + 2
        expected = frozenset(k for k in range(k_max + 1) if k not in set(entries))
        for side in ("T", "J"):
            j1 = compute_Jm(a, 1, k_max, side)
            j2 = compute_Jm(a, 2, k_max, side)
            if not (j1 == j2 == expected):
                return _fail(ident, desc,
                             f"a={entries} side={side}: J1={sorted(j1)} J2={sorted(j2)}", t0)
    return _ok(ident, desc, "4 sequences, both sides, k through a_max+2", t0)


def _grid_residue(x: UnitRational, modulus: int) -> int:
    assert modulus % x.den == 0
    return (x.num * (modulus // x.den)) % modulus


def criterion_09() -> CriterionResult:
    ident, desc = "criterion-09", "dyadic verdicts agree with brute force (T via grids, R via hull_R), entries <= 9, length <= 4"
    t0 = time.time()
    seqs = [GapSequence(c) for r in range(1, 5)
            for c in combinations(range(10), r)]
    checked_t = checked_r = 0
    for a in seqs:
        v = verdict_T2(a)
        if v.is_quasi_convex:
            for tlen in range(1, len(a) + 1):
                if not hull_grid(points_K2(a.prefix(tlen))).is_quasi_convex():
                    return _fail(ident, desc,
                                 f"T2 verdict QC but truncation {a.entries[:tlen]} is not", t0)
        else:
            recipe = v.witness_recipe
            work = a
            if recipe.terms_needed > len(a):
                # only the one-term a=(0,) hits this: the finite set {0,+-1/2}
                # is quasi-convex on its own, so manifest the violation on the
                # canonical gap-2 extension instead
                work = GapSequence(a.entries + tuple(
                    a.entries[-1] + 2 * (i + 1)
                    for i in range(recipe.terms_needed - len(a))))
            w = recipe.witness_point(work)
            E = points_K2(work.prefix(recipe.terms_needed))
            rep = hull_grid(E)
            res = _grid_residue(w, E.modulus)
            full = points_K2(work)
            if (res not in rep.hull.points or res in E.points
                    or _grid_residue(w, full.modulus) in full.points
                    or (work is a and hull_grid(full).is_quasi_convex())):
                return _fail(ident, desc, f"T2 witness failed for a={a.entries}", t0)
        checked_t += 1

        vr = verdict_R2(a)
        if vr.is_quasi_convex:
            for tlen in range(1, len(a) + 1):
                S = RealFiniteSet(points_R2(a.prefix(tlen)))
                if hull_R(S) != S.points:
                    return _fail(ident, desc,
                                 f"R2 verdict QC but truncation {a.entries[:tlen]} is not", t0)
        else:
            recipe = vr.witness_recipe
            w = recipe.witness_point(a)
            S = RealFiniteSet(points_R2(a.prefix(recipe.terms_needed)))
            full = RealFiniteSet(points_R2(a))
            if (not member_hull_R(S, w).inside or w in S.points
                    or w in full.points or hull_R(full) == full.points):
                return _fail(ident, desc, f"R2 witness failed for a={a.entries}", t0)
        checked_r += 1
    return _ok(ident, desc, f"{checked_t} sequences on the circle, {checked_r} on the line", t0)


def criterion_10() -> CriterionResult:
    ident, desc = "criterion-10", "chain necessity reports match brute-force contamination"
    t0 = time.time()
    rep = necessary_report_T(DivisibleChain.from_text("2,8"))
    if rep.b0_ge_4 or rep.all_pass:
        return _fail(ident, desc, "(2,8) should fail b0 >= 4", t0)
    X = GridSet.from_rationals([Fraction(0), Fraction(1, 2), Fraction(-1, 2),
                                Fraction(1, 8), Fraction(-1, 8)])
    h = hull_grid(X)
    res = _grid_residue(UnitRational(5, 8), 8)
    if res not in h.hull.points or res in X.points:
        return _fail(ident, desc, "translate contamination missing for (2,8)", t0)

    rep = necessary_report_T(DivisibleChain.from_text("9,27,81"))
    if rep.no_q3_without_4_divisor or rep.all_pass:
        return _fail(ident, desc, "(9,27,81) should fail the q!=3 rule", t0)
    X = GridSet.from_rationals(
        [Fraction(0)] + [s * Fraction(1, b) for b in (9, 27, 81) for s in (1, -1)])
    h = hull_grid(X)
    res = _grid_residue(UnitRational(2, 27), 81)
    if res not in h.hull.points or res in X.points:
        return _fail(ident, desc, "2/27 missing from hull for (9,27,81)", t0)

    cases = 0
    for b0 in (2, 4, 8, 16):
        patterns = [
            ((b0, 2 * b0, 4 * b0), Fraction(3, 4 * b0)),       # q = (2,2): h1+h2
            ((b0, 2 * b0, 6 * b0), Fraction(4, 6 * b0)),       # q = (2,3): 4h
            ((b0, 2 * b0, 8 * b0), Fraction(5, 8 * b0)),       # q = (2,4): 5h
        ]
        for terms, wit in patterns:
            chain = DivisibleChain(terms)
            if necessary_report_R(chain).all_pass or necessary_report_T(chain).all_pass:
                return _fail(ident, desc, f"chain {terms} should fail necessity", t0)
            pts = [Fraction(0)] + [s * Fraction(1, b) for b in terms for s in (1, -1)]
            X = GridSet.from_rationals(pts)
            h = hull_grid(X)
            res = _grid_residue(UnitRational.from_fraction(wit), X.modulus)
            if res not in h.hull.points or res in X.points:
                return _fail(ident, desc, f"witness {wit} missing from T-hull of {terms}", t0)
            S = RealFiniteSet.from_iterable(pts)
            if not member_hull_R(S, wit).inside or wit in S.points:
                return _fail(ident, desc, f"witness {wit} missing from R-hull of {terms}", t0)
            cases += 1
    return _ok(ident, desc, f"named chains plus {cases} patterned chains, T and R", t0)


def criterion_11() -> CriterionResult:
    ident, desc = "criterion-11", "pushforward containment f(Q(E)) in Q(f(E)) for multiplications and quotients"
    t0 = time.time()
    checked = 0
    # multiply-by-k on every grid N <= 64, over all symmetric sets with
    # up to 3 generator pairs; Q(E) = Q(E u -E u {0}) makes this cover
    # every E of size <= 3
    for n in range(1, 65):
        grid = BitGrid(n)
        gens = list(range(1, n // 2 + 1)) or [0]
        gsets: list[tuple[int, ...]] = []
        for r in (1, 2, 3):
            gsets.extend(combinations(gens, r))
        for gs in gsets:
            ebits = 0
            for g in gs:
                ebits |= (1 << g) | (1 << ((n - g) % n))
            hull_e = grid.hull_bits(ebits)
            for k in range(n):
                img = grid.map_bits(ebits, k)
                mapped = grid.map_bits(hull_e, k)
                if mapped & ~grid.hull_bits(img):
                    return _fail(ident, desc, f"multiplication failed: n={n}, E={gs}, k={k}", t0)
                checked += 1
    # quotient Z(27) -> Z(9): genuinely all E of size <= 3
    for r in (1, 2, 3):
        for E in combinations(range(27), r):
            if not pushforward_check(CyclicSet(27, frozenset(E)), QuotientBy(3)):
                return _fail(ident, desc, f"quotient Z(27)->Z(9) failed for E={E}", t0)
            checked += 1
    # quotient Z(3^7) -> Z(3^4): family-shaped generator pool
    pool = sorted({3 ** i for i in range(7)} | {2 * 3 ** i for i in range(7)}
                  | {1, 2, 4, 5, 7, 13})
    for r in (1, 2, 3):
        for E in combinations(pool, r):
            if not pushforward_check(CyclicSet(3 ** 7, frozenset(E)), QuotientBy(27)):
                return _fail(ident, desc, f"quotient Z(3^7)->Z(3^4) failed for E={E}", t0)
            checked += 1
    return _ok(ident, desc, f"{checked} (E, f) pairs", t0)


def criterion_12() -> CriterionResult:
    ident, desc = "criterion-12", "division lemma, grid form: both clauses exhaustive for N <= 64"
    t0 = time.time()
    checked = 0
    for n in range(4, 65):
        grid = BitGrid(n)
        # clause (a): Y inside T_m, kY quasi-convex, 0 < k <= 2m  =>  Y quasi-convex
        m = 1
        while n // (4 * m) >= 1:
            gens = list(range(1, n // (4 * m) + 1))
            for r in range(len(gens) + 1):
                for gs in combinations(gens, r):
                    base = 0
                    for g in gs:
                        base |= (1 << g) | (1 << (n - g))
                    for with_zero in (0, 1):
                        ybits = base | with_zero
                        if not ybits:
                            continue
                        for k in range(1, 2 * m + 1):
                            kbits = grid.map_bits(ybits, k)
                            if grid.is_quasi_convex(kbits):
                                checked += 1
                                if not grid.is_quasi_convex(ybits):
                                    return _fail(
                                        ident, desc,
                                        f"(a) fails: n={n}, m={m}, k={k}, gens={gs}", t0)
            m += 1
        # clause (b): Y inside T_4m, 4mY quasi-convex  =>  {+-1/(4m)} u Y quasi-convex
        for m in range(1, n // 4 + 1):
            if n % (4 * m):
                continue
            quarter = n // (4 * m)
            gens = [j for j in range(1, n // (16 * m) + 1)]
            for r in range(len(gens) + 1):
                for gs in combinations(gens, r):
                    base = 0
                    for g in gs:
                        base |= (1 << g) | (1 << (n - g))
                    for with_zero in (0, 1):
                        ybits = base | with_zero
                        if not ybits:
                            continue
                        kbits = grid.map_bits(ybits, 4 * m)
                        if grid.is_quasi_convex(kbits):
                            checked += 1
                            yprime = ybits | (1 << quarter) | (1 << (n - quarter))
                            if not grid.is_quasi_convex(yprime):
                                return _fail(
                                    ident, desc,
                                    f"(b) fails: n={n}, m={m}, gens={gs}", t0)
    return _ok(ident, desc, f"{checked} quasi-convex premises discharged", t0)


CRITERIA: dict[str, tuple[str, Callable[[], CriterionResult]]] = {
    "criterion-01": ("membership lemmas", criterion_01),
    "criterion-02": ("two-x equivalence", criterion_02),
    "criterion-03": ("{1,4,8} polar constant", criterion_03),
    "criterion-04": ("base-3 circle positive case", criterion_04),
    "criterion-05": ("base-3 circle negative cases", criterion_05),
    "criterion-06": ("3-adic family cases", criterion_06),
    "criterion-07": ("Q1 n Q2 finite analogues", criterion_07),
    "criterion-08": ("J_m index sets", criterion_08),
    "criterion-09": ("dyadic verdict/oracle agreement", criterion_09),
    "criterion-10": ("chain necessity reports", criterion_10),
    "criterion-11": ("pushforward functoriality", criterion_11),
    "criterion-12": ("division lemma grid form", criterion_12),
}


def _run_one(ident: str) -> CriterionResult:
    return CRITERIA[ident][1]()


def run_all(idents: Optional[Iterable[str]] = None, jobs: int = 1,
            stream=None) -> list[CriterionResult]:
    """Run criteria (all by default); results come back in criterion order."""
    wanted = list(idents) if idents is not None else list(CRITERIA)
    for ident in wanted:
        if ident not in CRITERIA:
            raise KeyError(f"unknown criterion {ident!r}")
    stream = stream if stream is not None else sys.stderr
    results: dict[str, CriterionResult] = {}
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(_run_one, wanted):
                results[res.ident] = res
                print(res.line(), file=stream)
    else:
        for ident in wanted:
            res = _run_one(ident)
            results[ident] = res
            print(res.line(), file=stream)
    return [results[i] for i in wanted]
