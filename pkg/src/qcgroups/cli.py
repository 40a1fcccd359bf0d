"""Batch command-line front end with deterministic JSON output.

Every computation is a subcommand; numbers in JSON output are exact
rational strings ("p/q") or integers, sets are emitted in canonical
order, and keys are sorted, so output is byte-deterministic for a fixed
invocation.  Exit status: 0 success, 1 a verified mathematical property
failed, 2 invalid input or configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import acceptance
from .circle import parse_rational, render_rational
from .duality import CyclicSet, GridSet, hull_cyclic, hull_grid, polar_grid
from .errors import InvalidInputError
from .families import (DivisibleChain, GapSequence, necessary_report_R,
                       necessary_report_T, verdict_J3, verdict_R2, verdict_T2,
                       verdict_T3)
from .padic import (PadicTruncGroup, compute_Jm, epsilon_forms, level_for,
                    q12_set)
from .realline import RealFiniteSet, hull_R, member_hull_R, polar_R
from .witnesses import (certificate_from_json, exclusion_J3, exclusion_T3,
                        verify_certificate)

SCHEMA = "qcgroups/1"
DEFAULT_MAX_GRID = 2 ** 20
DEFAULT_MAX_CYCLIC = 3 ** 13


@dataclass
class RunConfig:
    output: str = "json"           # "json" | "text"
    jobs: int = 1
    max_grid: int = DEFAULT_MAX_GRID
    max_cyclic: int = DEFAULT_MAX_CYCLIC

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(output="text" if args.text else "json", jobs=args.jobs)
        override = os.environ.get("QCG_MAX_GRID")
        if override:
            try:
                bound = int(override)
            except ValueError as exc:
                raise InvalidInputError(f"QCG_MAX_GRID={override!r} is not an integer") from exc
            if bound < 1:
                raise InvalidInputError("QCG_MAX_GRID must be positive")
            cfg.max_grid = bound
            cfg.max_cyclic = bound
        if cfg.jobs < 1:
            raise InvalidInputError("--jobs must be >= 1")
        return cfg

    def check_grid(self, modulus: int) -> None:
        if modulus > self.max_grid:
            raise InvalidInputError(
                f"grid modulus {modulus} exceeds the safety bound {self.max_grid} "
                "(set QCG_MAX_GRID to raise it)")

    def check_cyclic(self, order: int) -> None:
        if order > self.max_cyclic:
            raise InvalidInputError(
                f"group order {order} exceeds the safety bound {self.max_cyclic} "
                "(set QCG_MAX_GRID to raise it)")


def _emit(cfg: RunConfig, payload: dict, text_lines) -> None:
    if cfg.output == "json":
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines():
            print(line)


def _parse_rational_set(text: str) -> list[Fraction]:
    items = [t for t in text.split(",") if t.strip() != ""]
    if not items:
        raise InvalidInputError("empty set")
    return [parse_rational(t) for t in items]


def _parse_int_set(text: str) -> list[int]:
    try:
        items = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise InvalidInputError(f"bad integer set {text!r}") from exc
    if not items:
        raise InvalidInputError("empty set")
    return items


def _grid_input(args, cfg: RunConfig) -> GridSet:
    values = _parse_rational_set(args.set)
    E = GridSet.from_rationals(values, args.grid)
    cfg.check_grid(E.modulus)
    return E


def cmd_polar_t(args, cfg: RunConfig) -> int:
    E = _grid_input(args, cfg)
    P = polar_grid(E)
    _emit(cfg, {"op": "polar-t", **P.as_json()},
          lambda: [f"polar mod {P.modulus}: {sorted(P.residues)}"])
    return 0


def cmd_hull_t(args, cfg: RunConfig) -> int:
    E = _grid_input(args, cfg)
    rep = hull_grid(E)
    _emit(cfg, {"op": "hull-t", **rep.as_json(),
                "quasi_convex": rep.is_quasi_convex()},
          lambda: [f"hull: {rep.as_json()['hull']}",
                   f"quasi-convex: {rep.is_quasi_convex()}"])
    return 0


def cmd_hull_zn(args, cfg: RunConfig) -> int:
    cfg.check_cyclic(args.n)
    E = CyclicSet(args.n, frozenset(_parse_int_set(args.set)))
    rep = hull_cyclic(E)
    _emit(cfg, {"op": "hull-zn", **rep.as_json(),
                "quasi_convex": rep.is_quasi_convex()},
          lambda: [f"hull in Z({args.n}): {sorted(rep.hull.elements)}",
                   f"quasi-convex: {rep.is_quasi_convex()}"])
    return 0


def cmd_hull_j3(args, cfg: RunConfig) -> int:
    group = PadicTruncGroup(args.level)
    cfg.check_cyclic(group.order)
    E = CyclicSet(group.order, frozenset(_parse_int_set(args.set)))
    rep = hull_cyclic(E)
    canon = sorted(group.canonical(e) for e in rep.hull.elements)
    witnesses = {str(group.canonical(p)): k for p, k in sorted(rep.witnesses.items())}
    _emit(cfg, {"op": "hull-j3", "level": args.level, "order": group.order,
                "input": sorted(group.canonical(e) for e in E.elements),
                "hull": canon, "witnesses": witnesses,
                "quasi_convex": rep.is_quasi_convex()},
          lambda: [f"hull in Z(3^{args.level}): {canon}",
                   f"quasi-convex: {rep.is_quasi_convex()}"])
    return 0


def cmd_polar_r(args, cfg: RunConfig) -> int:
    S = RealFiniteSet.from_iterable(_parse_rational_set(args.set))
    P = polar_R(S)
    _emit(cfg, {"op": "polar-r", **P.as_json()},
          lambda: [f"period {render_rational(P.period)}: {P.one_period}"])
    return 0


def cmd_hull_r(args, cfg: RunConfig) -> int:
    S = RealFiniteSet.from_iterable(_parse_rational_set(args.set))
    hull = hull_R(S)
    out = sorted(hull)
    _emit(cfg, {"op": "hull-r", "hull": [render_rational(z) for z in out],
                "quasi_convex": hull == S.points},
          lambda: [f"hull: {[render_rational(z) for z in out]}"])
    return 0


def cmd_member_r(args, cfg: RunConfig) -> int:
    S = RealFiniteSet.from_iterable(_parse_rational_set(args.set))
    res = member_hull_R(S, parse_rational(args.target))
    _emit(cfg, {"op": "member-r", "target": args.target, **res.as_json()},
          lambda: [f"{args.target}: " + ("In" if res.inside
                                         else f"Out (witness {render_rational(res.witness)})")])
    return 0


_VERDICTS = {"T2": verdict_T2, "R2": verdict_R2, "T3": verdict_T3, "J3": verdict_J3}


def cmd_family_verdict(args, cfg: RunConfig) -> int:
    if args.family == "chain":
        chain = DivisibleChain.from_text(args.seq)
        _emit(cfg, {"op": "family-verdict", "family": "chain",
                    "terms": list(chain.terms), "ratios": list(chain.ratios),
                    "necessity_T": necessary_report_T(chain).as_json(),
                    "necessity_R": necessary_report_R(chain).as_json()},
              lambda: [f"T necessity: {necessary_report_T(chain).as_json()}",
                       f"R necessity: {necessary_report_R(chain).as_json()}"])
        return 0
    a = GapSequence.from_text(args.seq)
    verdict = _VERDICTS[args.family](a)
    _emit(cfg, {"op": "family-verdict", "family": args.family,
                "entries": list(a.entries), **verdict.as_json()},
          lambda: [f"{args.family} {a.entries}: {verdict.outcome}"
                   + (f" (violated {verdict.violated})" if verdict.violated else "")])
    return 0


def cmd_jm(args, cfg: RunConfig) -> int:
    a = GapSequence.from_text(args.seq)
    side = "T" if args.family == "T3" else "J"
    out = compute_Jm(a, args.m, args.kmax, side, args.level)
    _emit(cfg, {"op": "jm", "family": args.family, "m": args.m,
                "k_max": args.kmax, "members": sorted(out)},
          lambda: [f"J_{args.m} up to {args.kmax}: {sorted(out)}"])
    return 0


def cmd_q12(args, cfg: RunConfig) -> int:
    a = GapSequence.from_text(args.seq)
    side = "T" if args.family == "T3" else "J"
    exponent = args.grid if side == "T" else args.level
    if exponent is None:
        exponent = a.entries[-1] + 1 if side == "T" else level_for(a)
    cfg.check_cyclic(3 ** exponent)
    q12 = q12_set(a, side, exponent)
    eps = epsilon_forms(a, side, exponent)

    def ser(values):
        if side == "T":
            return sorted(str(v) for v in values)
        return sorted(values)

    _emit(cfg, {"op": "q12", "family": args.family, "exponent": exponent,
                "q12": ser(q12), "epsilon_forms": ser(eps), "equal": q12 == eps},
          lambda: [f"q12 == epsilon_forms: {q12 == eps} ({len(q12)} elements)"])
    return 0


def cmd_certify(args, cfg: RunConfig) -> int:
    a = GapSequence.from_text(args.seq)
    eps = _parse_int_set(args.epsilon)
    cert = (exclusion_T3(a, eps) if args.family == "T3" else exclusion_J3(a, eps))
    payload = cert.as_json()
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote certificate to {args.out}", file=sys.stderr)
    else:
        print(text)
    return 0


def cmd_verify_cert(args, cfg: RunConfig) -> int:
    try:
        with open(args.cert, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read certificate: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"certificate is not JSON: {exc}") from exc
    cert = certificate_from_json(data)
    valid = verify_certificate(cert, args.truncation)
    _emit(cfg, {"op": "verify-cert", "valid": valid},
          lambda: ["certificate valid" if valid else "certificate INVALID"])
    return 0 if valid else 1


def cmd_verify_paper(args, cfg: RunConfig) -> int:
    idents = args.criteria.split(",") if args.criteria else None
    results = acceptance.run_all(idents, jobs=cfg.jobs, stream=sys.stderr)
    all_passed = all(r.passed for r in results)
    _emit(cfg, {"op": "verify-paper", "all_passed": all_passed,
                "results": [{"id": r.ident, "description": r.description,
                             "passed": r.passed, "detail": r.detail,
                             "millis": int(r.seconds * 1000)} for r in results]},
          lambda: [r.line() for r in results]
          )
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcg",
        description="Exact polars, quasi-convex hulls and certificates in T, Z(n), Z(3^M) and R")
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True,
                     help="canonical JSON output (default)")
    fmt.add_argument("--text", action="store_true", default=False,
                     help="human-oriented text output")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallelism degree for sweeps (>= 1)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polar-t", parents=[common], help="polar of a grid set in T")
    p.add_argument("--set", required=True, help="comma-separated rationals, e.g. 0,1/8,-1/8")
    p.add_argument("--grid", type=int, default=None, help="grid modulus override")
    p.set_defaults(func=cmd_polar_t)

    p = sub.add_parser("hull-t", parents=[common], help="quasi-convex hull of a grid set in T")
    p.add_argument("--set", required=True)
    p.add_argument("--grid", type=int, default=None)
    p.set_defaults(func=cmd_hull_t)

    p = sub.add_parser("hull-zn", parents=[common], help="quasi-convex hull in Z(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated residues")
    p.set_defaults(func=cmd_hull_zn)

    p = sub.add_parser("hull-j3", parents=[common], help="quasi-convex hull in Z(3^level)")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated integers (signed ok)")
    p.set_defaults(func=cmd_hull_j3)

    p = sub.add_parser("polar-r", parents=[common], help="periodic polar of a finite set in R")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_polar_r)

    p = sub.add_parser("hull-r", parents=[common], help="quasi-convex hull in R")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_hull_r)

    p = sub.add_parser("member-r", parents=[common], help="exact hull membership in R")
    p.add_argument("--set", required=True)
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_member_r)

    p = sub.add_parser("family-verdict", parents=[common],
                       help="characterization verdict for a gap-sequence family")
    p.add_argument("--family", required=True, choices=["T2", "R2", "T3", "J3", "chain"])
    p.add_argument("--seq", required=True, help="comma-separated integers")
    p.set_defaults(func=cmd_family_verdict)

    p = sub.add_parser("jm", parents=[common], help="index set J_m of a family")
    p.add_argument("--family", required=True, choices=["T3", "J3"])
    p.add_argument("--seq", required=True)
    p.add_argument("--m", type=int, required=True, choices=[1, 2])
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--level", type=int, default=None)
    p.set_defaults(func=cmd_jm)

    p = sub.add_parser("q12", parents=[common],
                       help="finite Q1 n Q2 versus the epsilon-form set")
    p.add_argument("--family", required=True, choices=["T3", "J3"])
    p.add_argument("--seq", required=True)
    p.add_argument("--grid", type=int, default=None, help="grid exponent (T3 side)")
    p.add_argument("--level", type=int, default=None, help="truncation level (J3 side)")
    p.set_defaults(func=cmd_q12)

    p = sub.add_parser("certify", parents=[common],
                       help="build an exclusion certificate for an epsilon form")
    p.add_argument("--family", required=True, choices=["T3", "J3"])
    p.add_argument("--seq", required=True)
    p.add_argument("--epsilon", required=True, help="comma-separated coefficients in {-1,0,1}")
    p.add_argument("--out", default=None, help="write certificate JSON to a file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-cert", parents=[common],
                       help="re-check an exclusion certificate bit-exactly")
    p.add_argument("--cert", required=True, help="certificate JSON file")
    p.add_argument("--truncation", type=int, default=None)
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("verify-paper", parents=[common],
                       help="run the full acceptance suite")
    p.add_argument("--criteria", default=None,
                   help="comma-separated criterion ids (default: all)")
    p.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
