"""
Equivariant coefficients: Laurent polynomials over Z in z_1, ..., z_{n-1}.

The variable ``z_r`` is the class of the one-dimensional representation with
weight ``eps_{r+1} - eps_r``.  Every character ``eps_a - eps_b`` telescopes
into a Laurent monomial in these, so the coefficient ring of the torus
never needs more than n - 1 generators.

>>> n = 5
>>> c = char_monomial(5, 3, n)
>>> str(c), str(char_monomial(1, 3, n))
('z3*z4', 'z1^-1*z2^-1')
>>> specialize_one(1 - char_monomial(3, 1, n))
0
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping, Union

__all__ = [
    "TorusCoefficient", "NotInPositivityCone",
    "char_monomial", "specialize_one", "to_positivity_basis",
    "from_positivity_basis", "phi_twist",
]

Exponent = tuple[int, ...]


class NotInPositivityCone(ValueError):
    """Raised when a Laurent polynomial has a negative exponent and so cannot
    be rewritten as a polynomial in ``z_r - 1``."""


class TorusCoefficient:
    """Sparse Laurent polynomial with integer coefficients.

    Instances are treated as immutable; ``terms`` maps exponent vectors of
    length ``nvars`` to nonzero integers.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError(
                            f"exponent {e} has length {len(e)}, expected {nvars}")
                    clean[tuple(e)] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> TorusCoefficient:
        # terms already canonical
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars: int, c: int) -> TorusCoefficient:
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exp: Iterable[int], c: int = 1) -> TorusCoefficient:
        exp = tuple(exp)
        return cls._raw(len(exp), {exp: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, r: int) -> TorusCoefficient:
        """The variable ``z_r`` (1-based)."""
        if not 1 <= r <= nvars:
            raise ValueError(f"variable z{r} out of range 1..{nvars}")
        e = [0] * nvars
        e[r - 1] = 1
        return cls._raw(nvars, {tuple(e): 1})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> TorusCoefficient:
        if isinstance(other, TorusCoefficient):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"coefficients in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, int):
            return TorusCoefficient.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TorusCoefficient._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusCoefficient._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return TorusCoefficient._raw(self.nvars, {})
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return TorusCoefficient._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return TorusCoefficient._raw(
                self.nvars, {tuple(a * k for a in e): c ** -k})
        result = TorusCoefficient.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = TorusCoefficient.constant(self.nvars, other)
        if not isinstance(other, TorusCoefficient):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------

    @property
    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return all(e == zero for e in self.terms)

    @property
    def has_negative_exponents(self) -> bool:
        return any(a < 0 for e in self.terms for a in e)

    def constant_value(self) -> int:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical order: total degree, then lower-index variables first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), [-a for a in t[0]]))

    def __str__(self) -> str:
        return self.format("z")

    def __repr__(self) -> str:
        return f"TorusCoefficient({self.nvars}, {self.terms!r})"

    def format(self, var: str = "z") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{var}{r + 1}" if a == 1 else f"{var}{r + 1}^{a}"
                for r, a in enumerate(e) if a)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)


Scalar = Union[int, TorusCoefficient]


def char_monomial(a: int, b: int, n: int) -> TorusCoefficient:
    """The character ``eps_a - eps_b`` for ``a, b`` in ``1..n``."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"character indices ({a},{b}) out of range 1..{n}")
    e = [0] * (n - 1)
    if a > b:
        for r in range(b, a):
            e[r - 1] = 1
    elif a < b:
        for r in range(a, b):
            e[r - 1] = -1
    return TorusCoefficient._raw(n - 1, {tuple(e): 1})


def specialize_one(c: TorusCoefficient) -> int:
    """Evaluate at ``z_1 = ... = z_{n-1} = 1``."""
    return sum(c.terms.values())


def to_positivity_basis(c: TorusCoefficient) -> TorusCoefficient:
    """Rewrite ``c`` in the variables ``y_r = z_r - 1``.

    The result is returned as a TorusCoefficient whose variables are read
    as ``y_r``.  Raises :class:`NotInPositivityCone` when ``c`` has a negative
    exponent, since such a ``c`` is not a polynomial in the ``y_r``.

    >>> z1 = TorusCoefficient.variable(2, 1)
    >>> to_positivity_basis(1 - z1).format("y")
    '-y1'
    """
    if c.has_negative_exponents:
        raise NotInPositivityCone(f"{c} has negative exponents")
    out: dict[Exponent, int] = {}
    for e, coeff in c.terms.items():
        # prod_r (1 + y_r)^{e_r}
        partial: dict[Exponent, int] = {(): coeff}
        for a in e:
            nxt = {}
            for k, v in partial.items():
                for t in range(a + 1):
                    nxt[k + (t,)] = v * comb(a, t)
            partial = nxt
        for k, v in partial.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return TorusCoefficient._raw(c.nvars, out)


def from_positivity_basis(p: TorusCoefficient) -> TorusCoefficient:
    """Inverse of :func:`to_positivity_basis`: substitute ``y_r = z_r - 1``."""
    nv = p.nvars
    shifted = [TorusCoefficient.variable(nv, r) - 1 for r in range(1, nv + 1)]
    total = TorusCoefficient.constant(nv, 0)
    for e, c in p.terms.items():
        term = TorusCoefficient.constant(nv, c)
        for r, a in enumerate(e):
            if a:
                term = term * shifted[r] ** a
        total = total + term
    return total


def phi_twist(c: TorusCoefficient) -> TorusCoefficient:
    """The coefficient automorphism ``z_r -> z_{n-r}``, an involution."""
    return TorusCoefficient._raw(c.nvars, {e[::-1]: v for e, v in c.terms.items()})
