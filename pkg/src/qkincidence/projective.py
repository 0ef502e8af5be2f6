"""
Quantum K-theory of P^{n-1}, reached from the incidence variety by the first
projection.

``ProjIndex(k, n)`` stands for ``q^(k // n) O^(k % n)``, so, as on the
incidence variety, quantum powers live inside the label.  The projection
sends ``O^[i,j]`` to ``ProjIndex(i - 1)`` on the raw (extended) value of
``i``, which forgets ``j`` and sets ``q2 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .coefficients import TorusCoefficient, char_monomial
from .combinatorics import bar
from .qkring import QKElement, _accumulate

__all__ = ["ProjIndex", "ProjElement", "project", "proj_mult"]


@dataclass(frozen=True, slots=True, order=True)
class ProjIndex:
    k: int
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"rank parameter n must be >= 3, got {self.n}")
        if self.k < 0:
            raise ValueError(f"projective index must be >= 0, got {self.k}")

    @property
    def q_power(self) -> int:
        return self.k // self.n

    @property
    def residue(self) -> int:
        return self.k % self.n

    def __str__(self) -> str:
        body = f"O^{self.residue}"
        p = self.q_power
        if p == 0:
            return body
        return f"q*{body}" if p == 1 else f"q^{p}*{body}"


class ProjElement:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, TorusCoefficient | int] | None = None):
        self.n = n
        self.terms: dict[int, TorusCoefficient] = {}
        for k, c in (terms or {}).items():
            ProjIndex(k, n)
            if isinstance(c, int):
                c = TorusCoefficient.constant(n - 1, c)
            if c:
                self.terms[k] = c

    @classmethod
    def basis(cls, k: int, n: int) -> ProjElement:
        return cls(n, {k: 1})

    def __add__(self, other: ProjElement) -> ProjElement:
        if self.n != other.n:
            raise ValueError(f"elements for different n: {self.n} and {other.n}")
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return ProjElement(self.n, out)

    def __sub__(self, other: ProjElement) -> ProjElement:
        return self + ProjElement(other.n, {k: -c for k, c in other.terms.items()})

    def scale(self, c: TorusCoefficient) -> ProjElement:
        return ProjElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            idx = str(ProjIndex(k, self.n))
            sign = 1
            if len(c.terms) == 1:
                (e, v), = c.terms.items()
                sign = -1 if v < 0 else 1
                mono = TorusCoefficient.monomial(e, abs(v))
                body = idx if mono == 1 else f"{mono}*{idx}"
            else:
                body = f"({c})*{idx}"
            if not parts:
                parts.append(f"-{body}" if sign < 0 else body)
            else:
                parts.append(f" - {body}" if sign < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ProjElement(n={self.n}, {str(self)!r})"


def project(e: QKElement) -> ProjElement:
    """Push a class on the incidence variety down to P^{n-1}.

    >>> from .combinatorics import TildeIndex
    >>> print(project(QKElement.basis(TildeIndex(6, -3, 5))))
    q*O^0
    """
    out: dict = {}
    for w, c in e.terms.items():
        _accumulate(out, [(w.i - 1, c)])
    return ProjElement(e.n, out)


def _times_hyperplane(a: ProjElement) -> ProjElement:
    n = a.n
    out: dict = {}
    for m, v in a.terms.items():
        c = char_monomial(bar(m + 1, n), 1, n)
        _accumulate(out, [(m, v * (1 - c)), (m + 1, v * c)])
    return ProjElement(n, out)


def proj_mult(a: ProjElement, b: ProjElement, equivariant: bool = False) -> ProjElement:
    """Product in QK(P^{n-1}); equivariantly only when one factor lies in span(O^0, O^1).

    >>> n = 5
    >>> print(proj_mult(ProjElement.basis(3, n), ProjElement.basis(4, n)))
    q*O^2
    >>> print(proj_mult(ProjElement.basis(1, n), ProjElement.basis(1, n), equivariant=True))
    (1 - z1)*O^1 + z1*O^2
    """
    if a.n != b.n:
        raise ValueError(f"elements for different n: {a.n} and {b.n}")
    n = a.n
    if not equivariant:
        out: dict = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                _accumulate(out, [(k1 + k2, c1 * c2)])
        return ProjElement(n, out)
    if not set(b.terms) <= {0, 1}:
        if set(a.terms) <= {0, 1}:
            a, b = b, a
        else:
            raise ValueError("equivariant products on P^{n-1} need a factor in span(O^0, O^1)")
    result = ProjElement(n)
    if 0 in b.terms:
        result = result + a.scale(b.terms[0])
    if 1 in b.terms:
        result = result + _times_hyperplane(a).scale(b.terms[1])
    return result
