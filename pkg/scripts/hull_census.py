#!/usr/bin/env python3
"""Census of truncated family hulls against the characterization verdicts.

Enumerates every strictly increasing gap sequence within the given
bounds, prints the verdict for the chosen family, and brute-forces the
hull of each truncation to show where (and how) contamination appears.

Examples:
    python scripts/hull_census.py --family T3 --max-entry 6 --max-len 3
    python scripts/hull_census.py --family T2 --max-entry 7 --max-len 4 --only-disagreements
"""

from __future__ import annotations

import argparse
from itertools import combinations

from qcgroups.circle import UnitRational
from qcgroups.duality import hull_cyclic, hull_grid
from qcgroups.families import (GapSequence, points_K2, points_K3, points_L3,
                               verdict_J3, verdict_T2, verdict_T3)

FAMILIES = {
    "T2": (verdict_T2, lambda a: points_K2(a)),
    "T3": (verdict_T3, lambda a: points_K3(a)),
    "J3": (verdict_J3, lambda a: points_L3(a, a.entries[-1] + 2)),
}


def truncation_report(kind: str, a: GapSequence) -> list[str]:
    lines = []
    for t in range(1, len(a) + 1):
        prefix = a.prefix(t)
        if kind == "J3":
            E = points_L3(prefix, prefix.entries[-1] + 2)
            rep = hull_cyclic(E)
            extra = sorted(rep.hull.elements - E.elements)
            label = f"Z(3^{prefix.entries[-1] + 2})"
        else:
            E = FAMILIES[kind][1](prefix)
            rep = hull_grid(E)
            extra = sorted(str(UnitRational(p, E.modulus))
                           for p in rep.hull.points - E.points)
            label = f"grid {E.modulus}"
        status = "quasi-convex" if not extra else f"hull gains {extra[:4]}"
        lines.append(f"    terms {t} ({label}): {status}")
    return lines


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=sorted(FAMILIES), default="T3")
    parser.add_argument("--max-entry", type=int, default=6)
    parser.add_argument("--max-len", type=int, default=3)
    parser.add_argument("--only-disagreements", action="store_true",
                        help="print only sequences whose full truncation "
                             "disagrees with the verdict")
    args = parser.parse_args()

    verdict_fn = FAMILIES[args.family][0]
    for r in range(1, args.max_len + 1):
        for entries in combinations(range(args.max_entry + 1), r):
            a = GapSequence(entries)
            v = verdict_fn(a)
            lines = truncation_report(args.family, a)
            full_qc = lines[-1].endswith("quasi-convex")
            if args.only_disagreements and full_qc == v.is_quasi_convex:
                continue
            flag = "" if full_qc == v.is_quasi_convex else "   <-- inspect"
            print(f"a={entries}: {v.outcome}"
                  + (f" ({v.violated})" if v.violated else "") + flag)
            for line in lines:
                print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
