"""
Brute-force Bruhat order on the full symmetric group.

Used only as an independent check of the closed-form combinatorics: a W^P
label ``[i,j]`` is identified with its minimal coset representative, the
permutation with ``w(1) = i``, ``w(n) = j`` and the remaining values
increasing in between.
"""

from __future__ import annotations

from functools import cached_property
from itertools import permutations

from .combinatorics import TildeIndex, WPIndex, enumerate_wp

Perm = tuple[int, ...]

__all__ = ["PermutationOracle", "sn_bruhat_leq"]


class PermutationOracle:
    def __init__(self, n: int):
        if n < 3:
            raise ValueError(f"rank parameter n must be >= 3, got {n}")
        self.n = n

    def check(self, p: Perm) -> Perm:
        p = tuple(p)
        if sorted(p) != list(range(1, self.n + 1)):
            raise ValueError(f"{p} is not a permutation of 1..{self.n}")
        return p

    def permutation(self, w: WPIndex) -> Perm:
        if not w.is_wp or w.n != self.n:
            raise ValueError(f"{w} is not in W^P for n={self.n}")
        middle = [x for x in range(1, self.n + 1) if x not in (w.i, w.j)]
        return (w.i, *middle, w.j)

    def label(self, p: Perm) -> WPIndex:
        p = self.check(p)
        if not self.is_minimal(p):
            raise ValueError(f"{p} is not a minimal coset representative")
        return TildeIndex(p[0], p[-1], self.n)

    @staticmethod
    def is_minimal(p: Perm) -> bool:
        """No descent among positions 2..n-1."""
        return all(p[k] < p[k + 1] for k in range(1, len(p) - 2))

    def leq(self, u: Perm, v: Perm) -> bool:
        """Tableau criterion: sorted prefixes of u are dominated by those of v."""
        u, v = self.check(u), self.check(v)
        for k in range(1, self.n):
            if any(a > b for a, b in zip(sorted(u[:k]), sorted(v[:k]))):
                return False
        return True

    @cached_property
    def group(self) -> list[Perm]:
        return list(permutations(range(1, self.n + 1)))

    @cached_property
    def _non_minimal(self) -> list[Perm]:
        return [p for p in self.group if not self.is_minimal(p)]

    def interval_in_wp(self, u: Perm, v: Perm) -> bool:
        """Whether every w with u <= w <= v is a minimal coset representative."""
        return not any(self.leq(u, w) and self.leq(w, v) for w in self._non_minimal)

    def i_set(self, v: WPIndex) -> frozenset[WPIndex]:
        pv = self.permutation(v)
        out = set()
        for u in enumerate_wp(self.n):
            pu = self.permutation(u)
            if self.leq(pu, pv) and self.interval_in_wp(pu, pv):
                out.add(u)
        return frozenset(out)


def sn_bruhat_leq(oracle: PermutationOracle, u: Perm, v: Perm) -> bool:
    """
    >>> o = PermutationOracle(3)
    >>> sn_bruhat_leq(o, (2, 1, 3), (2, 3, 1))
    True
    """
    return oracle.leq(u, v)
