"""Bitmask hull engine for exhaustive small-modulus sweeps.

For a fixed modulus n the predicate "k*j/n lands in T_+" is an n-by-n
boolean table; storing each row as an n-bit integer turns polars into
bitwise ANDs and hull membership of j into one test
(polar & ~ok[j]) == 0.  Hulls are memoized by the bitmask of the input
set, which is what makes the all-subsets sweeps cheap.  Results agree
with duality.polar_residues / hull_residues by construction (same
predicate); the test suite cross-checks them anyway.
"""

from __future__ import annotations

from .errors import InvalidInputError


def iter_bits(bits: int):
    """Indices of the set bits, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class BitGrid:
    """Polar/hull arithmetic in Z(n) (equivalently the (1/n)-grid) on bitmasks."""

    def __init__(self, n: int):
        if n < 1:
            raise InvalidInputError("modulus must be positive")
        self.n = n
        self.full = (1 << n) - 1
        ok = []
        for j in range(n):
            row = 0
            for k in range(n):
                r = (k * j) % n
                if 4 * min(r, n - r) <= n:
                    row |= 1 << k
            ok.append(row)
        self.ok = ok
        self._hulls: dict[int, int] = {}

    def set_bits(self, elems) -> int:
        bits = 0
        for e in elems:
            bits |= 1 << (e % self.n)
        return bits

    def polar_bits(self, elem_bits: int) -> int:
        if not elem_bits:
            raise InvalidInputError("polar of the empty set is not defined here")
        polar = self.full
        for j in iter_bits(elem_bits):
            polar &= self.ok[j]
        return polar

    def hull_bits(self, elem_bits: int) -> int:
        cached = self._hulls.get(elem_bits)
        if cached is not None:
            return cached
        polar = self.polar_bits(elem_bits)
        hull = 0
        for j in range(self.n):
            if polar & ~self.ok[j] == 0:
                hull |= 1 << j
        self._hulls[elem_bits] = hull
        return hull

    def is_quasi_convex(self, elem_bits: int) -> bool:
        return self.hull_bits(elem_bits) == elem_bits

    def map_bits(self, elem_bits: int, k: int) -> int:
        out = 0
        for j in iter_bits(elem_bits):
            out |= 1 << ((k * j) % self.n)
        return out

    def hull_set(self, elems) -> frozenset[int]:
        return frozenset(iter_bits(self.hull_bits(self.set_bits(elems))))
