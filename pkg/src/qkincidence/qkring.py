"""
The equivariant quantum K-theory ring of Fl(1, n-1; n).

Elements are finite sums ``sum c_w O^w`` over extended labels ``w``, with
Laurent-polynomial coefficients ``c_w``.  Because an extended label already
encodes its q-power, a :class:`QKElement` is just a dictionary from labels
to coefficients.

Products are computed in three independent ways:

* :func:`chevalley_mult` multiplies by a Schubert divisor (closed formula,
  equivariant);
* :func:`lr_mult` multiplies two Schubert classes non-equivariantly
  (closed formula with one or three terms);
* :func:`mult` handles arbitrary equivariant products through the recursion
  that writes one factor as a polynomial in the two divisor operators
  (:func:`divisor_polynomial`), applying Chevalley steps as it goes.
  :func:`polynomial_product` expands the polynomial first and is kept as a
  cross-check.

>>> n = 5
>>> a = QKElement.basis(TildeIndex(1, 2, n))
>>> b = QKElement.basis(TildeIndex(2, 1, n))
>>> print(mult(a, b).specialize())
q2*O[2,3]
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .coefficients import (
    TorusCoefficient, char_monomial, phi_twist, specialize_one,
)
from .combinatorics import (
    Degree, TildeIndex, WPIndex, ZERO, bar, chi, divisor_index, i_set, iota,
    length, normalize, q_shift, unit_index,
)

__all__ = [
    "QKElement", "DivisorPolynomial", "AlgorithmDepthError",
    "chevalley_mult", "classical_divisor_mult", "lr_mult",
    "divisor_polynomial", "mult", "basis_product", "polynomial_product",
    "dual_expand", "euler_pair", "phi_map", "divisor", "clear_caches",
]

log = logging.getLogger(__name__)


class AlgorithmDepthError(RuntimeError):
    """The divisor-polynomial recursion exceeded its depth guard."""


class QKElement:
    """A finite combination of classes ``O^w`` with TorusCoefficient weights."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[TildeIndex, TorusCoefficient] | None = None):
        self.n = n
        self.terms: dict[TildeIndex, TorusCoefficient] = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise ValueError(f"label {w} has n={w.n}, element has n={n}")
            if isinstance(c, int):
                c = TorusCoefficient.constant(n - 1, c)
            if c.nvars != n - 1:
                raise ValueError("coefficient has the wrong number of variables")
            if c:
                self.terms[w] = c

    @classmethod
    def _raw(cls, n: int, terms: dict) -> QKElement:
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n: int) -> QKElement:
        return cls._raw(n, {})

    @classmethod
    def basis(cls, w: TildeIndex, coeff: TorusCoefficient | int = 1) -> QKElement:
        if isinstance(coeff, int):
            coeff = TorusCoefficient.constant(w.n - 1, coeff)
        return cls._raw(w.n, {w: coeff} if coeff else {})

    @classmethod
    def unit(cls, n: int) -> QKElement:
        return cls.basis(unit_index(n))

    @classmethod
    def q(cls, n: int, d: Degree) -> QKElement:
        return cls.basis(q_shift(unit_index(n), d))

    # -- linear structure ----------------------------------------------------

    def _check(self, other: QKElement) -> None:
        if other.n != self.n:
            raise ValueError(f"elements for different n: {self.n} and {other.n}")

    def __add__(self, other: QKElement) -> QKElement:
        if not isinstance(other, QKElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return QKElement._raw(self.n, out)

    def __neg__(self) -> QKElement:
        return QKElement._raw(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: QKElement) -> QKElement:
        if not isinstance(other, QKElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: TorusCoefficient | int) -> QKElement:
        if isinstance(c, int):
            if c == 1:
                return self
            c = TorusCoefficient.constant(self.n - 1, c)
        if not c:
            return QKElement.zero(self.n)
        return QKElement._raw(self.n, {w: v for w, v in
                                       ((w, v * c) for w, v in self.terms.items()) if v})

    def __rmul__(self, c):
        if isinstance(c, (int, TorusCoefficient)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, QKElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[TildeIndex, TorusCoefficient]]:
        return iter(self.terms.items())

    def coefficient(self, w: TildeIndex) -> TorusCoefficient:
        return self.terms.get(w, TorusCoefficient.constant(self.n - 1, 0))

    # -- inspection and maps -------------------------------------------------

    @property
    def is_classical(self) -> bool:
        return all(w.degree == ZERO for w in self.terms)

    def degrees(self) -> set[Degree]:
        return {w.degree for w in self.terms}

    def q_shift(self, d: Degree) -> QKElement:
        if d == ZERO:
            return self
        return QKElement._raw(self.n, {q_shift(w, d): c for w, c in self.terms.items()})

    def map_coefficients(self, f) -> QKElement:
        out = {}
        for w, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[w] = c2
        return QKElement._raw(self.n, out)

    def specialize(self) -> QKElement:
        """Set every ``z_r`` to 1 (the non-equivariant image)."""
        nv = self.n - 1
        return self.map_coefficients(
            lambda c: TorusCoefficient.constant(nv, specialize_one(c)))

    def truncate(self, cutoff: Degree) -> QKElement:
        return QKElement._raw(self.n, {w: c for w, c in self.terms.items()
                                       if w.degree <= cutoff})

    def sorted_terms(self) -> list[tuple[TildeIndex, TorusCoefficient]]:
        """Terms ordered by (degree, bar label)."""
        def key(item):
            w = item[0]
            d = w.degree
            return (d.d1, d.d2, w.ibar, w.jbar)
        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        from .formats import format_element
        return format_element(self)

    def __repr__(self) -> str:
        return f"QKElement(n={self.n}, {str(self)!r})"


def _accumulate(out: dict, items: Iterable) -> None:
    for w, c in items:
        if w in out:
            s = out[w] + c
            if s:
                out[w] = s
            else:
                del out[w]
        elif c:
            out[w] = c


def divisor(k: int, n: int) -> QKElement:
    return QKElement.basis(divisor_index(k, n))


# -- Chevalley rule -----------------------------------------------------------

@lru_cache(maxsize=None)
def _chevalley_offsets(ib: int, jb: int, n: int, k: int, equivariant: bool):
    """Offsets ``(di, dj)`` and coefficients of ``O^[i,j] * O^[k]``.

    Depends only on the residues of ``i, j``; the same offsets apply to any
    extended label with those residues.
    """
    if k == 1:
        c = char_monomial(ib, 1, n)
        if (ib + 1 - jb) % n:
            shape = [((1, 0), 1)]
        else:
            shape = [((1, -1), 1), ((2, 0), 1), ((2, -1), -1)]
    elif k == 2:
        c = char_monomial(n, jb, n)
        if (ib + 1 - jb) % n:
            shape = [((0, -1), 1)]
        else:
            shape = [((1, -1), 1), ((0, -2), 1), ((1, -2), -1)]
    else:
        raise ValueError(f"divisor k must be 1 or 2, got {k}")
    if not equivariant:
        c = TorusCoefficient.constant(n - 1, specialize_one(c))
    out = []
    diag = 1 - c
    if diag:
        out.append(((0, 0), diag))
    for off, sign in shape:
        out.append((off, c if sign == 1 else -c))
    return tuple(out)


def _chevalley_terms(w: TildeIndex, k: int, equivariant: bool = True):
    n = w.n
    for (di, dj), c in _chevalley_offsets(w.ibar, w.jbar, n, k, equivariant):
        yield TildeIndex(w.i + di, w.j + dj, n), c


def chevalley_mult(e: QKElement, k: int, equivariant: bool = True) -> QKElement:
    """Quantum product ``e * O^[k]`` by a Schubert divisor.

    >>> n = 5
    >>> print(chevalley_mult(QKElement.basis(TildeIndex(1, 3, n)), 1))
    O[2,3]
    """
    out: dict[TildeIndex, TorusCoefficient] = {}
    for w, a in e.terms.items():
        _accumulate(out, ((v, a * c) for v, c in _chevalley_terms(w, k, equivariant)))
    return QKElement._raw(e.n, out)


def classical_divisor_mult(e: QKElement, k: int, equivariant: bool = True) -> QKElement:
    """Product by a divisor in ordinary K-theory: Chevalley with q-terms dropped."""
    out: dict[TildeIndex, TorusCoefficient] = {}
    for w, a in e.terms.items():
        d = w.degree
        _accumulate(out, ((v, a * c) for v, c in _chevalley_terms(w, k, equivariant)
                          if v.degree == d))
    return QKElement._raw(e.n, out)


# -- Littlewood-Richardson rule ---------------------------------------------

def lr_terms(u: TildeIndex, v: TildeIndex) -> list[tuple[TildeIndex, int]]:
    """Non-equivariant product of two classes as a list of signed labels."""
    if u.n != v.n:
        raise ValueError(f"labels for different n: {u.n} and {v.n}")
    n = u.n
    ib, jb, kb, lb = u.ibar, u.jbar, v.ibar, v.jbar
    x = u.i + v.i - 1
    y = u.j + v.j - n
    if ib - jb + kb - lb + n - 1 < n * (chi(ib > jb) + chi(kb > lb)):
        return [(TildeIndex(x, y, n), 1)]
    return [(TildeIndex(x, y - 1, n), 1), (TildeIndex(x + 1, y, n), 1),
            (TildeIndex(x + 1, y - 1, n), -1)]


def lr_mult(u: TildeIndex, v: TildeIndex) -> QKElement:
    """``O^u * O^v`` in non-equivariant quantum K-theory.

    >>> n = 5
    >>> print(lr_mult(TildeIndex(2, 3, n), TildeIndex(4, 5, n)))
    O[5,2] - q1*O[1,2] + q1*O[1,3]
    """
    nv = u.n - 1
    return QKElement._raw(u.n, {w: TorusCoefficient.constant(nv, s)
                                for w, s in lr_terms(u, v)})


# -- divisor polynomials ------------------------------------------------------

class DivisorPolynomial:
    """Polynomial in the operators M1, M2 (multiplication by O^[1], O^[2]).

    ``terms`` maps ``(a, b, d)`` to a TorusCoefficient, meaning
    ``coeff * q^d * M1^a * M2^b``.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms: dict[tuple[int, int, Degree], TorusCoefficient] = {}
        if terms:
            _accumulate(self.terms, terms.items())

    @classmethod
    def constant(cls, n: int, c: TorusCoefficient | int = 1, d: Degree = ZERO):
        if isinstance(c, int):
            c = TorusCoefficient.constant(n - 1, c)
        return cls(n, {(0, 0, d): c})

    @classmethod
    def operator(cls, n: int, k: int) -> DivisorPolynomial:
        key = (1, 0, ZERO) if k == 1 else (0, 1, ZERO)
        return cls(n, {key: TorusCoefficient.constant(n - 1, 1)})

    def __add__(self, other: DivisorPolynomial) -> DivisorPolynomial:
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return DivisorPolynomial(self.n, out)

    def __neg__(self) -> DivisorPolynomial:
        return DivisorPolynomial(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: DivisorPolynomial) -> DivisorPolynomial:
        return self + (-other)

    def __mul__(self, other) -> DivisorPolynomial:
        if isinstance(other, (int, TorusCoefficient)):
            return DivisorPolynomial(self.n, {k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for (a1, b1, d1), c1 in self.terms.items():
            for (a2, b2, d2), c2 in other.terms.items():
                _accumulate(out, [((a1 + a2, b1 + b2, d1 + d2), c1 * c2)])
        return DivisorPolynomial(self.n, out)

    __rmul__ = __mul__

    def q_shift(self, d: Degree) -> DivisorPolynomial:
        return DivisorPolynomial(
            self.n, {(a, b, dd + d): c for (a, b, dd), c in self.terms.items()})

    def specialize(self) -> DivisorPolynomial:
        nv = self.n - 1
        return DivisorPolynomial(
            self.n, {k: TorusCoefficient.constant(nv, specialize_one(c))
                     for k, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def apply(self, e: QKElement, equivariant: bool = True) -> QKElement:
        """Evaluate the polynomial with M_k acting on ``e`` by Chevalley steps."""
        powers: dict[tuple[int, int], QKElement] = {(0, 0): e}

        def power(a: int, b: int) -> QKElement:
            if (a, b) not in powers:
                if a > 0:
                    powers[(a, b)] = chevalley_mult(power(a - 1, b), 1, equivariant)
                else:
                    powers[(a, b)] = chevalley_mult(power(a, b - 1), 2, equivariant)
            return powers[(a, b)]

        out: dict = {}
        for (a, b, d), c in sorted(self.terms.items(),
                                   key=lambda t: (t[0][0], t[0][1], t[0][2].d1, t[0][2].d2)):
            if not equivariant:
                c = TorusCoefficient.constant(self.n - 1, specialize_one(c))
            _accumulate(out, ((q_shift(w, d), c * v)
                              for w, v in power(a, b).terms.items()))
        return QKElement._raw(self.n, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, d), c in sorted(self.terms.items(),
                                   key=lambda t: (t[0][0] + t[0][1], t[0][0], t[0][1],
                                                  t[0][2].d1, t[0][2].d2)):
            sign, factors = 1, []
            if len(c.terms) == 1:
                (e, v), = c.terms.items()
                sign = -1 if v < 0 else 1
                mono = TorusCoefficient.monomial(e, abs(v))
                if not mono == 1:
                    factors.append(str(mono))
            else:
                factors.append(f"({c})")
            for name, p in (("q1", d.d1), ("q2", d.d2), ("M1", a), ("M2", b)):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            body = "*".join(factors) if factors else "1"
            if not parts:
                parts.append(f"-{body}" if sign < 0 else body)
            else:
                parts.append(f" - {body}" if sign < 0 else f" + {body}")
        return "".join(parts)


_POLY_CACHE: dict[tuple[int, int, int], DivisorPolynomial] = {}


def divisor_polynomial(u: WPIndex) -> DivisorPolynomial:
    """Express ``O^u`` as a polynomial in O^[1], O^[2] and q.

    >>> print(divisor_polynomial(TildeIndex(2, 5, 5)))
    M1
    """
    if not u.is_wp:
        raise ValueError(f"{u} is not in W^P")
    return _divisor_poly(u.i, u.j, u.n, 0)


def _poly_of(w: TildeIndex, depth: int) -> DivisorPolynomial:
    # extended labels contribute their q-power times the polynomial of the residue
    wb, d = normalize(w)
    p = _divisor_poly(wb.i, wb.j, w.n, depth)
    return p.q_shift(d) if d != ZERO else p


def _divisor_poly(i: int, j: int, n: int, depth: int) -> DivisorPolynomial:
    key = (n, i, j)
    cached = _POLY_CACHE.get(key)
    if cached is not None:
        return cached
    if depth > 4 * n:
        raise AlgorithmDepthError(f"divisor polynomial recursion too deep at [{i},{j}], n={n}")
    one = DivisorPolynomial.constant(n, 1)
    if (i, j) == (1, n):
        result = one
    elif (i < j == n) or (i > j + 1):
        prev = _poly_of(TildeIndex(i - 1, j, n), depth + 1)
        c = char_monomial(1, i - 1, n)
        result = (DivisorPolynomial.operator(n, 1) - one) * prev * c + prev
    elif i < j < n:
        prev = _poly_of(TildeIndex(i, j + 1, n), depth + 1)
        c = char_monomial(j + 1, n, n)
        result = (DivisorPolynomial.operator(n, 2) - one) * prev * c + prev
    else:
        assert i == j + 1
        c = char_monomial(i, n, n)
        cinv = char_monomial(n, i, n)
        swapped = _poly_of(TildeIndex(j, i, n), depth + 1)
        lower = _poly_of(TildeIndex(j, j - 1, n), depth + 1)
        side = _poly_of(TildeIndex(i, j - 1, n), depth + 1)
        op = DivisorPolynomial.operator(n, 2) + DivisorPolynomial.constant(n, cinv) - one
        result = op * swapped * c - lower + side
    _POLY_CACHE[key] = result
    return result


# -- general products ---------------------------------------------------------

class NegativeDegreeError(RuntimeError):
    """A product of two W^P classes produced a negative power of q."""


def _char(a: int, b: int, n: int, equivariant: bool) -> TorusCoefficient:
    c = char_monomial(a, b, n)
    return c if equivariant else TorusCoefficient.constant(n - 1, 1)


@lru_cache(maxsize=None)
def _basis_product_wp(ui: int, uj: int, vi: int, vj: int, n: int,
                      equivariant: bool) -> QKElement:
    result = _factored_product(ui, uj, TildeIndex(vi, vj, n), equivariant, 0)
    for w in result.terms:
        if not w.degree.is_effective:
            raise NegativeDegreeError(
                f"O^[{ui},{uj}] * O^[{vi},{vj}] has a term {w} of negative degree")
    return result


def _shifted_product(w: TildeIndex, v: TildeIndex, equivariant: bool,
                     depth: int) -> QKElement:
    wb, d = normalize(w)
    return _factored_product(wb.i, wb.j, v, equivariant, depth).q_shift(d)


def _factored_product(i: int, j: int, v: TildeIndex, equivariant: bool,
                      depth: int) -> QKElement:
    # Same recursion as _divisor_poly, but evaluated on O^v at every step
    # instead of expanding the operator polynomial first.  Intermediate
    # results are genuine products O^[i',j'] * O^v and stay small.
    n = v.n
    cached = _FACTORED.get((i, j, v.i, v.j, n, equivariant))
    if cached is not None:
        return cached
    if depth > 4 * n:
        raise AlgorithmDepthError(f"product recursion too deep at [{i},{j}], n={n}")
    if (i, j) == (1, n):
        result = QKElement.basis(v)
    elif (i < j == n) or (i > j + 1):
        prev = _shifted_product(TildeIndex(i - 1, j, n), v, equivariant, depth + 1)
        c = _char(1, i - 1, n, equivariant)
        result = (chevalley_mult(prev, 1, equivariant) - prev).scale(c) + prev
    elif i < j < n:
        prev = _shifted_product(TildeIndex(i, j + 1, n), v, equivariant, depth + 1)
        c = _char(j + 1, n, n, equivariant)
        result = (chevalley_mult(prev, 2, equivariant) - prev).scale(c) + prev
    else:
        c = _char(i, n, n, equivariant)
        cinv = _char(n, i, n, equivariant)
        swapped = _shifted_product(TildeIndex(j, i, n), v, equivariant, depth + 1)
        lower = _shifted_product(TildeIndex(j, j - 1, n), v, equivariant, depth + 1)
        side = _shifted_product(TildeIndex(i, j - 1, n), v, equivariant, depth + 1)
        step = chevalley_mult(swapped, 2, equivariant) + swapped.scale(cinv) - swapped
        result = step.scale(c) - lower + side
    _FACTORED[(i, j, v.i, v.j, n, equivariant)] = result
    return result


_FACTORED: dict[tuple, QKElement] = {}


def polynomial_product(u: WPIndex, v: WPIndex, equivariant: bool = True) -> QKElement:
    """``O^u * O^v`` by expanding the divisor polynomial of ``u`` and applying it.

    Slower than :func:`basis_product`, which evaluates the same recursion in
    factored form; kept as an independent cross-check.
    """
    poly = divisor_polynomial(u)
    if not equivariant:
        poly = poly.specialize()
    return poly.apply(QKElement.basis(v), equivariant)


def basis_product(u: TildeIndex, v: TildeIndex, equivariant: bool = True) -> QKElement:
    """``O^u * O^v`` for two extended labels."""
    if u.n != v.n:
        raise ValueError(f"labels for different n: {u.n} and {v.n}")
    ub, du = normalize(u)
    vb, dv = normalize(v)
    prod = _basis_product_wp(ub.i, ub.j, vb.i, vb.j, u.n, equivariant)
    return prod.q_shift(du + dv)


def mult(e1: QKElement, e2: QKElement, equivariant: bool = True) -> QKElement:
    """Quantum product of two elements.

    With ``equivariant=False`` the inputs are specialized at ``z = 1`` first
    and the non-equivariant structure constants are used.
    """
    if e1.n != e2.n:
        raise ValueError(f"elements for different n: {e1.n} and {e2.n}")
    if not equivariant:
        e1, e2 = e1.specialize(), e2.specialize()
    out: dict = {}
    for u, a in e1.terms.items():
        for v, b in e2.terms.items():
            ab = a * b
            _accumulate(out, ((w, ab * c) for w, c in
                              basis_product(u, v, equivariant).terms.items()))
    return QKElement._raw(e1.n, out)


# -- duals, pairing, symmetry ---------------------------------------------------

def dual_expand(v: WPIndex) -> dict[WPIndex, int]:
    """The dual class of ``v`` as a signed sum of Schubert (not opposite) classes.

    >>> sorted((str(u), s) for u, s in dual_expand(TildeIndex(1, 2, 5)).items())
    [('[1,2]', 1), ('[1,3]', -1)]
    """
    lv = length(v)
    return {u: (-1) ** ((length(u) + lv) % 2) for u in i_set(v)}


def euler_pair(e: QKElement, w: WPIndex) -> TorusCoefficient:
    """Equivariant Euler characteristic of ``e`` times the Schubert class of ``w``."""
    if not e.is_classical:
        raise ValueError("euler_pair needs an element of ordinary K-theory (no q-terms)")
    if not w.is_wp or w.n != e.n:
        raise ValueError(f"{w} is not in W^P for n={e.n}")
    total = TorusCoefficient.constant(e.n - 1, 0)
    for x, c in e.terms.items():
        if w.i >= x.i and w.j <= x.j:
            total = total + c
    return total


def phi_map(e: QKElement) -> QKElement:
    """The ring involution induced by swapping the two projections."""
    return QKElement._raw(e.n, {iota(w): phi_twist(c) for w, c in e.terms.items()})


def clear_caches() -> None:
    """Forget every memoized polynomial and product (used for cold timings)."""
    _POLY_CACHE.clear()
    _FACTORED.clear()
    _basis_product_wp.cache_clear()
    _chevalley_offsets.cache_clear()
