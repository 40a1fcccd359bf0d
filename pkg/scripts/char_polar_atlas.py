#!/usr/bin/env python3
"""Atlas of exact polars {k_1, ..., k_r}^< inside the circle.

For small sets of integer characters, prints the polar as an exact union
of rational intervals in the window (-1/2, 1/2], and flags the polars
that contain isolated points (degenerate intervals); those boundary
points are what several of the hull arguments pivot on, e.g. +-1/4 in
{1,3,4}^< or +-15/64 as interval centers in {1,4,8}^<.

Example:
    python scripts/char_polar_atlas.py --max-char 9 --isolated-only
"""

from __future__ import annotations

import argparse
from itertools import combinations

from qcgroups.duality import char_polar_intervals


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-char", type=int, default=8)
    parser.add_argument("--size", type=int, default=3, choices=(1, 2, 3))
    parser.add_argument("--isolated-only", action="store_true")
    args = parser.parse_args()

    for ks in combinations(range(1, args.max_char + 1), args.size):
        polar = char_polar_intervals(ks)
        isolated = [lo for lo, hi in polar.intervals if lo == hi]
        if args.isolated_only and not isolated:
            continue
        note = f"   isolated points: {[str(v) for v in isolated]}" if isolated else ""
        print(f"{{{','.join(map(str, ks))}}}^< = {polar}{note}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
