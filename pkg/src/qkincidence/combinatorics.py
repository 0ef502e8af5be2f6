"""
Schubert labels for the incidence variety Fl(1, n-1; n).

Opposite Schubert classes are labelled by pairs ``[i, j]`` of unequal
integers in ``1..n`` (the set W^P).  Allowing arbitrary integers with
``i != j (mod n)`` gives the extended labels used throughout the package:
``[i, j]`` stands for ``q1^d1 q2^d2`` times the class of ``[i mod n, j mod n]``
(residues taken in ``1..n``), so quantum powers never need to be stored
separately.

>>> normalize(TildeIndex(6, -3, 5))
(TildeIndex(i=1, j=2, n=5), Degree(d1=1, d2=1))
>>> q_shift(TildeIndex(2, 3, 5), Degree(0, 1))
TildeIndex(i=2, j=-2, n=5)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

__all__ = [
    "Degree", "TildeIndex", "WPIndex",
    "bar", "chi", "wp", "normalize", "q_shift", "length", "length_closed_form",
    "bruhat_leq", "iota", "i_set", "enumerate_wp", "effective_degrees",
    "unit_index", "divisor_index", "top_index",
]


@dataclass(frozen=True, slots=True)
class Degree:
    """A curve class d1*[line in fibre of p2] + d2*[line in fibre of p1]."""
    d1: int
    d2: int

    def __add__(self, other: Degree) -> Degree:
        return Degree(self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: Degree) -> Degree:
        return Degree(self.d1 - other.d1, self.d2 - other.d2)

    def __neg__(self) -> Degree:
        return Degree(-self.d1, -self.d2)

    # componentwise partial order
    def __le__(self, other: Degree) -> bool:
        return self.d1 <= other.d1 and self.d2 <= other.d2

    def __ge__(self, other: Degree) -> bool:
        return other <= self

    def __iter__(self):
        return iter((self.d1, self.d2))

    def swap(self) -> Degree:
        return Degree(self.d2, self.d1)

    @property
    def is_effective(self) -> bool:
        return self.d1 >= 0 and self.d2 >= 0

    @staticmethod
    def parse(text: str) -> Degree:
        parts = text.replace(" ", "").split(",")
        if len(parts) != 2:
            raise ValueError(f"degree must look like 'd1,d2', got {text!r}")
        return Degree(int(parts[0]), int(parts[1]))


ZERO = Degree(0, 0)


def bar(k: int, n: int) -> int:
    """Residue of ``k`` modulo ``n`` taken in ``1..n``.

    >>> [bar(k, 5) for k in (-5, -1, 0, 1, 5, 6)]
    [5, 4, 5, 1, 5, 1]
    """
    return (k - 1) % n + 1


def chi(cond: bool) -> int:
    return 1 if cond else 0


@dataclass(frozen=True, slots=True)
class TildeIndex:
    """Extended Schubert label ``[i, j]`` with ``i != j (mod n)``."""
    i: int
    j: int
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"rank parameter n must be >= 3, got {self.n}")
        if (self.i - self.j) % self.n == 0:
            raise ValueError(
                f"malformed index [{self.i},{self.j}]: i = j mod {self.n}")

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]"

    @property
    def ibar(self) -> int:
        return bar(self.i, self.n)

    @property
    def jbar(self) -> int:
        return bar(self.j, self.n)

    @property
    def degree(self) -> Degree:
        n = self.n
        return Degree((self.i - self.ibar) // n, (self.jbar - self.j) // n)

    @property
    def is_wp(self) -> bool:
        return 1 <= self.i <= self.n and 1 <= self.j <= self.n


# a TildeIndex with both entries in 1..n
WPIndex = TildeIndex


def wp(i: int, j: int, n: int) -> WPIndex:
    """Construct an element of W^P, rejecting anything outside ``1..n``."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"[{i},{j}] is not in W^P for n={n}")
    return TildeIndex(i, j, n)


def unit_index(n: int) -> WPIndex:
    return TildeIndex(1, n, n)


def top_index(n: int) -> WPIndex:
    return TildeIndex(n, 1, n)


def divisor_index(k: int, n: int) -> WPIndex:
    """Label of the Schubert divisor: ``[2,n]`` for k=1, ``[1,n-1]`` for k=2."""
    if k == 1:
        return TildeIndex(2, n, n)
    if k == 2:
        return TildeIndex(1, n - 1, n)
    raise ValueError(f"divisor k must be 1 or 2, got {k}")


def normalize(w: TildeIndex) -> tuple[WPIndex, Degree]:
    return TildeIndex(w.ibar, w.jbar, w.n), w.degree


def q_shift(w: TildeIndex, d: Degree) -> TildeIndex:
    """Multiply the class of ``w`` by ``q1^d1 q2^d2``."""
    return TildeIndex(w.i + d.d1 * w.n, w.j - d.d2 * w.n, w.n)


def length(w: TildeIndex) -> int:
    """Codimension of the class plus the c1-degree of its q-power."""
    n = w.n
    i, j = w.ibar, w.jbar
    d = w.degree
    return (i - 1) + (n - j) - chi(i > j) + (n - 1) * (d.d1 + d.d2)


def length_closed_form(w: TildeIndex) -> Fraction:
    """Second expression for the length, evaluated in exact rationals.

    ``(n-1)(1 + (x-y)/n) + (xbar-ybar)/n - chi(xbar > ybar)``; equal to
    :func:`length` for every label.
    """
    n, x, y = w.n, w.i, w.j
    xb, yb = w.ibar, w.jbar
    return (n - 1) * (1 + Fraction(x - y, n)) + Fraction(xb - yb, n) - chi(xb > yb)


def _check_same_n(u: TildeIndex, v: TildeIndex) -> None:
    if u.n != v.n:
        raise ValueError(f"labels for different n: {u.n} and {v.n}")


def bruhat_leq(u: WPIndex, v: WPIndex) -> bool:
    """Bruhat order on W^P: ``[a',b'] <= [a,b]`` iff ``a' <= a`` and ``b' >= b``."""
    _check_same_n(u, v)
    if not (u.is_wp and v.is_wp):
        raise ValueError("bruhat_leq is defined on W^P labels only")
    return u.i <= v.i and u.j >= v.j


def iota(w: TildeIndex) -> TildeIndex:
    """The involution ``[i,j] -> [n+1-j, n+1-i]``; swaps the two q-degrees."""
    n = w.n
    return TildeIndex(n + 1 - w.j, n + 1 - w.i, n)


def i_set(v: WPIndex) -> frozenset[WPIndex]:
    """Labels ``u <= v`` whose whole Bruhat interval ``[u, v]`` in S_n lies in W^P.

    >>> sorted(str(u) for u in i_set(TildeIndex(4, 1, 5)))
    ['[3,1]', '[3,2]', '[4,1]', '[4,2]']
    """
    if not v.is_wp:
        raise ValueError(f"{v} is not in W^P")
    return _i_set(v.i, v.j, v.n)


@lru_cache(maxsize=None)
def _i_set(a: int, b: int, n: int) -> frozenset[WPIndex]:
    if a - b == 1:
        cands = [(a, b), (b - 1, b), (b, a), (a, a + 1), (b - 1, a), (b, a + 1)]
    elif a - b == 2:
        cands = [(k, l) for k in range(b, a + 1) for l in range(b, a + 1)]
    else:
        cands = [(a, b), (a - 1, b), (a, b + 1), (a - 1, b + 1)]
    return frozenset(
        TildeIndex(k, l, n) for k, l in cands
        if 1 <= k <= n and 1 <= l <= n and k != l)


def enumerate_wp(n: int) -> list[WPIndex]:
    """All n(n-1) labels of W^P in lexicographic order."""
    if n < 3:
        raise ValueError(f"rank parameter n must be >= 3, got {n}")
    return list(_enumerate_wp(n))


@lru_cache(maxsize=None)
def _enumerate_wp(n: int) -> tuple[WPIndex, ...]:
    return tuple(TildeIndex(i, j, n)
                 for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def effective_degrees(cutoff: Degree) -> Iterator[Degree]:
    """Every ``d`` with ``0 <= d <= cutoff``, ordered by (d1, d2)."""
    for d1 in range(cutoff.d1 + 1):
        for d2 in range(cutoff.d2 + 1):
            yield Degree(d1, d2)
