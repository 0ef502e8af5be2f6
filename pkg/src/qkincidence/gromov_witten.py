"""
Curve neighbourhoods, the Psi map, and K-theoretic Gromov-Witten invariants.

Psi and the pairing series are infinite in q, so they only exist here
under an explicit cutoff degree; every coefficient at a degree <= cutoff is
exact and nothing beyond the cutoff is stored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import TorusCoefficient, char_monomial
from .combinatorics import (
    Degree, TildeIndex, WPIndex, ZERO, bruhat_leq, effective_degrees, enumerate_wp,
    i_set, length, normalize, q_shift,
)
from .qkring import QKElement, _accumulate, classical_divisor_mult, euler_pair, lr_mult

__all__ = [
    "DEFAULT_CUTOFF", "RichardsonDescriptor", "TruncatedSeries",
    "gamma_schubert", "gamma_opposite", "gamma_divisor",
    "psi", "psi_inverse", "odot_divisor",
    "gw_divisor_closed", "gw_divisor_qclassical", "gw_divisor_dual",
    "three_point", "q_interval_check", "q_degree_set",
]

DEFAULT_CUTOFF = Degree(3, 3)


def _check_degree(d: Degree) -> None:
    if not d.is_effective:
        raise ValueError(f"degree {tuple(d)} is not effective")


def _check_wp(u: TildeIndex) -> None:
    if not u.is_wp:
        raise ValueError(f"{u} is not in W^P")


def gamma_schubert(u: WPIndex, d: Degree) -> WPIndex:
    """Label of the Schubert variety swept out by degree-d curves through X_u.

    >>> str(gamma_schubert(TildeIndex(2, 3, 5), Degree(1, 0)))
    '[5,3]'
    """
    _check_wp(u)
    _check_degree(d)
    n, i, j = u.n, u.i, u.j
    if d == ZERO:
        return u
    if d.d2 == 0:
        return TildeIndex(n, j, n) if j < n else TildeIndex(n - 1, n, n)
    if d.d1 == 0:
        return TildeIndex(i, 1, n) if i > 1 else TildeIndex(1, 2, n)
    return TildeIndex(n, 1, n)


def gamma_opposite(u: WPIndex, d: Degree) -> WPIndex:
    """Label of the opposite Schubert variety swept out from X^u.

    >>> str(gamma_opposite(TildeIndex(3, 1, 5), Degree(1, 0)))
    '[2,1]'
    """
    _check_wp(u)
    _check_degree(d)
    n, i, j = u.n, u.i, u.j
    if d == ZERO:
        return u
    if d.d2 == 0:
        return TildeIndex(1, j, n) if j > 1 else TildeIndex(2, 1, n)
    if d.d1 == 0:
        return TildeIndex(i, n, n) if i < n else TildeIndex(n, n - 1, n)
    return TildeIndex(1, n, n)


@dataclass(frozen=True)
class RichardsonDescriptor:
    """A curve neighbourhood, optionally intersected with a divisor D^[k]."""
    base: WPIndex
    divisor_cut: int | None = None

    def __str__(self) -> str:
        if self.divisor_cut is None:
            return f"X_{self.base}"
        return f"X_{self.base} & D^[{self.divisor_cut}]"


def gamma_divisor(u: WPIndex, d: Degree, k: int) -> RichardsonDescriptor:
    if k not in (1, 2):
        raise ValueError(f"divisor k must be 1 or 2, got {k}")
    base = gamma_schubert(u, d)
    dk = d.d1 if k == 1 else d.d2
    return RichardsonDescriptor(base, k if dk == 0 else None)


# -- Psi ----------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """A series in q known exactly at every degree <= cutoff."""
    element: QKElement
    cutoff: Degree

    def __post_init__(self):
        _check_degree(self.cutoff)
        extra = [w for w in self.element.terms if not w.degree <= self.cutoff]
        if extra:
            raise ValueError(f"term {extra[0]} lies beyond the cutoff")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.element == other.element

    def __str__(self) -> str:
        return f"{self.element} + O(q^{tuple(self.cutoff)})"


def _psi_terms(w: TildeIndex, cutoff: Degree):
    wb, dw = normalize(w)
    room = cutoff - dw
    if not room.is_effective:
        return
    for d in effective_degrees(room):
        yield q_shift(gamma_opposite(wb, d), dw + d)


def psi(e: QKElement, cutoff: Degree = DEFAULT_CUTOFF) -> TruncatedSeries:
    """Psi(e) truncated at ``cutoff``.

    >>> print(psi(QKElement.basis(TildeIndex(5, 1, 5)), Degree(1, 1)).element)
    O[5,1] + q2*O[5,4] + q1*O[2,1] + q1*q2*O[1,5]
    """
    _check_degree(cutoff)
    out: dict = {}
    for w, c in e.terms.items():
        _accumulate(out, ((v, c) for v in _psi_terms(w, cutoff)))
    return TruncatedSeries(QKElement._raw(e.n, out), cutoff)


def psi_inverse(s: TruncatedSeries) -> QKElement:
    """Invert Psi below the cutoff by peeling off lowest-degree terms."""
    rest = dict(s.element.terms)
    result: dict = {}
    n = s.element.n
    while rest:
        w = min(rest, key=lambda x: (sum(x.degree), tuple(x.degree), x.ibar, x.jbar))
        c = rest[w]
        result[w] = c
        _accumulate(rest, ((v, -c) for v in _psi_terms(w, s.cutoff)))
    return QKElement._raw(n, result)


# -- divisor invariants -------------------------------------------------------

def gw_divisor_closed(u: WPIndex, k: int, w: TildeIndex) -> TorusCoefficient:
    """Closed form of the invariant I(O^u, O^[k]; O_w), raw integer comparisons.

    >>> str(gw_divisor_closed(TildeIndex(2, 3, 5), 1, TildeIndex(2, 1, 5)))
    '1 - z1'
    """
    _check_wp(u)
    n = u.n
    zero = TorusCoefficient.constant(n - 1, 0)
    one = TorusCoefficient.constant(n - 1, 1)
    if not w.degree.is_effective:
        return zero
    i, j, a, b = u.i, u.j, w.i, w.j
    if k == 1:
        if i == a and j >= b:
            return 1 - char_monomial(w.ibar, 1, n)
        if i < a and j >= b:
            return one
        return zero
    if k == 2:
        if i <= a and j == b:
            return 1 - char_monomial(n, w.jbar, n)
        if i <= a and j > b:
            return one
        return zero
    raise ValueError(f"divisor k must be 1 or 2, got {k}")


def gw_divisor_qclassical(sigma: QKElement, k: int, w: WPIndex, d: Degree) -> TorusCoefficient:
    """The same invariant computed as a classical Euler characteristic."""
    _check_degree(d)
    if k not in (1, 2):
        raise ValueError(f"divisor k must be 1 or 2, got {k}")
    if not sigma.is_classical:
        raise ValueError("gw_divisor_qclassical needs a classical class (no q-terms)")
    target = gamma_schubert(w, d)
    dk = d.d1 if k == 1 else d.d2
    if dk > 0:
        return euler_pair(sigma, target)
    return euler_pair(classical_divisor_mult(sigma, k), target)


def gw_divisor_dual(u: WPIndex, k: int, w: TildeIndex) -> TorusCoefficient:
    """I(O^u, O^[k]; dual of O_w): a coefficient of O^u (.) O^[k].

    >>> str(gw_divisor_dual(TildeIndex(2, 3, 5), 1, TildeIndex(3, 2, 5)))
    'z1'
    """
    wb, dw = normalize(w)
    lw = length(wb)
    total = TorusCoefficient.constant(u.n - 1, 0)
    for z in i_set(wb):
        val = gw_divisor_closed(u, k, q_shift(z, dw))
        if val:
            total = total + val if (length(z) + lw) % 2 == 0 else total - val
    return total


def odot_divisor(u: WPIndex, k: int, cutoff: Degree = DEFAULT_CUTOFF) -> TruncatedSeries:
    """The series O^u (.) O^[k], assembled from :func:`gw_divisor_dual`."""
    _check_degree(cutoff)
    n = u.n
    out = {}
    for d in effective_degrees(cutoff):
        for v in enumerate_wp(n):
            w = q_shift(v, d)
            c = gw_divisor_dual(u, k, w)
            if c:
                out[w] = c
    return TruncatedSeries(QKElement._raw(n, out), cutoff)


# -- three-point invariants ---------------------------------------------------

def three_point(u: WPIndex, v: WPIndex, w: WPIndex, d: Degree) -> int:
    """Non-equivariant invariant I_d(O^u, O^v, O_w).

    >>> n = 5
    >>> three_point(TildeIndex(2, 1, n), TildeIndex(5, 1, n), TildeIndex(5, 1, n), Degree(1, 1))
    1
    """
    _check_degree(d)
    _check_wp(w)
    return _three_point_from_series(psi(lr_mult(u, v), d).element, w, d)


def _three_point_from_series(series: QKElement, w: WPIndex, d: Degree) -> int:
    total = 0
    for x, c in series.terms.items():
        if x.degree == d:
            xb, _ = normalize(x)
            if bruhat_leq(xb, w):
                total += c.constant_value()
    return total


def q_degree_set(u: WPIndex, v: WPIndex) -> list[Degree]:
    """Degrees of the nonzero terms of O^u * O^v, sorted."""
    return sorted({w.degree for w in lr_mult(u, v).terms}, key=tuple)


def q_interval_check(u: WPIndex, v: WPIndex) -> bool:
    """Whether the q-degrees of O^u * O^v fill the box between their min and max.

    >>> n = 5
    >>> q_interval_check(TildeIndex(2, 3, n), TildeIndex(4, 5, n))
    True
    """
    degs = q_degree_set(u, v)
    lo = Degree(min(d.d1 for d in degs), min(d.d2 for d in degs))
    hi = Degree(max(d.d1 for d in degs), max(d.d2 for d in degs))
    box = [lo + d for d in effective_degrees(hi - lo)]
    return sorted(box, key=tuple) == degs
