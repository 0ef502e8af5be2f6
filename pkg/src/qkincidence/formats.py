"""
Text and JSON forms of ring elements.

Text grammar (whitespace is insignificant)::

    element := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' ['-'] uint]
    atom    := uint | 'z'r | 'q1' | 'q2' | 'O[' int ',' int ']' | '(' expr ')'

A term holds at most one ``O[i,j]``; a term without one is read as a
multiple of the unit ``O[1,n]``.  Parenthesised expressions may not contain
``O`` or ``q``.  Canonical output writes every label in reduced form with
explicit q-powers, terms sorted by degree and then by label.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .coefficients import TorusCoefficient
from .combinatorics import Degree, TildeIndex, ZERO, q_shift

__all__ = [
    "ParseError", "parse_element", "parse_coefficient", "parse_index",
    "format_element", "format_term", "element_to_json", "element_from_json",
    "coefficient_to_json", "dumps",
]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.message = message
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([zq])(\d+)|(O\[)|([-+*^(),\]]))")


def _tokenize(text: str) -> list[tuple[str, Any, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            p = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[p]!r}", text, p)
        start = m.start(0) + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append((m.group(2), int(m.group(3)), start))
        elif m.group(4):
            toks.append(("O[", None, start))
        else:
            toks.append((m.group(5), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        if n < 3:
            raise ValueError(f"rank parameter n must be >= 3, got {n}")
        self.text = text
        self.n = n
        self.nv = n - 1
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind: str | None = None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}, found {self._describe(tok)}")
        self.k += 1
        return tok

    def fail(self, message: str, pos: int | None = None):
        raise ParseError(message, self.text, self.peek()[2] if pos is None else pos)

    @staticmethod
    def _describe(tok) -> str:
        kind, val, _ = tok
        if kind == "end":
            return "end of input"
        if kind == "int":
            return repr(str(val))
        if kind in ("z", "q"):
            return repr(f"{kind}{val}")
        return repr(kind)

    # element := signed sum of terms; terms are (coeff, degree, label or None)
    def sum(self, allow_basis: bool):
        terms = []
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.term(sign, allow_basis))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append(self.term(sign, allow_basis))
        return terms

    def term(self, sign: int, allow_basis: bool):
        coeff = TorusCoefficient.constant(self.nv, sign)
        degree = ZERO
        label = None
        while True:
            tok = self.peek()
            kind, val, pos = tok
            if kind == "int":
                self.take()
                coeff = coeff * self.power(TorusCoefficient.constant(self.nv, val))
            elif kind == "z":
                self.take()
                if not 1 <= val <= self.nv:
                    self.fail(f"variable z{val} out of range 1..{self.nv}", pos)
                coeff = coeff * self.power(TorusCoefficient.variable(self.nv, val))
            elif kind == "q":
                if not allow_basis:
                    self.fail("q may not appear inside parentheses", pos)
                if val not in (1, 2):
                    self.fail(f"unknown quantum parameter q{val}", pos)
                self.take()
                e = self.exponent()
                degree = degree + (Degree(e, 0) if val == 1 else Degree(0, e))
            elif kind == "O[":
                if not allow_basis:
                    self.fail("O[...] may not appear inside parentheses", pos)
                if label is not None:
                    self.fail("a term may contain only one O[...]", pos)
                self.take()
                label = self.index(pos)
            elif kind == "(":
                self.take()
                inner = self.sum(allow_basis=False)
                self.take(")")
                total = TorusCoefficient.constant(self.nv, 0)
                for c, _, _ in inner:
                    total = total + c
                coeff = coeff * self.power(total)
            else:
                self.fail(f"expected a factor, found {self._describe(tok)}")
            if self.peek()[0] == "*":
                self.take()
                continue
            break
        return coeff, degree, label

    def exponent(self) -> int:
        if self.peek()[0] != "^":
            return 1
        self.take()
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        val = self.take("int")[1]
        return -val if neg else val

    def power(self, base: TorusCoefficient) -> TorusCoefficient:
        e = self.exponent()
        if e == 1:
            return base
        pos = self.toks[self.k - 1][2]
        try:
            return base ** e
        except ValueError as exc:
            self.fail(str(exc), pos)

    def signed_int(self) -> int:
        neg = False
        if self.peek()[0] in ("-", "+"):
            neg = self.take()[0] == "-"
        val = self.take("int")[1]
        return -val if neg else val

    def index(self, pos: int) -> TildeIndex:
        i = self.signed_int()
        self.take(",")
        j = self.signed_int()
        self.take("]")
        if (i - j) % self.n == 0:
            self.fail(f"malformed index [{i},{j}]: i = j mod {self.n}", pos)
        return TildeIndex(i, j, self.n)


def parse_element(text: str, n: int):
    """Parse the text form of an element of the ring for the given n.

    >>> print(parse_element("q2*O[2,3]", 5).terms)
    {TildeIndex(i=2, j=-2, n=5): TorusCoefficient(4, {(0, 0, 0, 0): 1})}
    """
    from .qkring import QKElement, _accumulate
    p = _Parser(text, n)
    if p.peek()[0] == "end":
        p.fail("empty element")
    terms = p.sum(allow_basis=True)
    p.take("end")
    out: dict = {}
    unit = TildeIndex(1, n, n)
    for coeff, degree, label in terms:
        w = q_shift(label if label is not None else unit, degree)
        _accumulate(out, [(w, coeff)])
    return QKElement._raw(n, out)


def parse_coefficient(text: str, n: int) -> TorusCoefficient:
    """Parse a Laurent polynomial in z1..z{n-1}."""
    p = _Parser(text, n)
    if p.peek()[0] == "end":
        p.fail("empty coefficient")
    terms = p.sum(allow_basis=False)
    p.take("end")
    total = TorusCoefficient.constant(n - 1, 0)
    for c, _, _ in terms:
        total = total + c
    return total


_INDEX = re.compile(r"^\s*(?:O)?\[\s*([-+]?\d+)\s*,\s*([-+]?\d+)\s*\]\s*$")


def parse_index(text: str, n: int) -> TildeIndex:
    """Read ``[i,j]`` (or ``O[i,j]``)."""
    m = _INDEX.match(text)
    if not m:
        raise ParseError(f"expected an index like [i,j], got {text!r}", text, 0)
    i, j = int(m.group(1)), int(m.group(2))
    if (i - j) % n == 0:
        raise ParseError(f"malformed index [{i},{j}]: i = j mod {n}", text, 0)
    return TildeIndex(i, j, n)


# -- printing -----------------------------------------------------------------

def _qpart(d: Degree) -> list[str]:
    out = []
    for name, e in (("q1", d.d1), ("q2", d.d2)):
        if e == 1:
            out.append(name)
        elif e:
            out.append(f"{name}^{e}")
    return out


def format_term(w: TildeIndex, c: TorusCoefficient) -> tuple[int, str]:
    """Sign and unsigned body of one term."""
    sign = 1
    factors = []
    if len(c.terms) == 1:
        (e, v), = c.terms.items()
        if v < 0:
            sign = -1
        mono = TorusCoefficient.monomial(e, abs(v))
        if not mono == 1:
            factors.append(str(mono))
    else:
        factors.append(f"({c})")
    factors.extend(_qpart(w.degree))
    factors.append(f"O[{w.ibar},{w.jbar}]")
    return sign, "*".join(factors)


def format_element(e) -> str:
    if not e.terms:
        return "0"
    parts = []
    for w, c in e.sorted_terms():
        sign, body = format_term(w, c)
        if not parts:
            parts.append(f"-{body}" if sign < 0 else body)
        else:
            parts.append(f" - {body}" if sign < 0 else f" + {body}")
    return "".join(parts)


# -- JSON ---------------------------------------------------------------------

def coefficient_to_json(c: TorusCoefficient) -> list[dict]:
    return [{"exp": list(e), "c": str(v)} for e, v in c.sorted_terms()]


def element_to_json(e) -> dict:
    terms = []
    for w, c in e.sorted_terms():
        d = w.degree
        terms.append({"i": w.i, "j": w.j, "bar": [w.ibar, w.jbar],
                      "degree": [d.d1, d.d2], "coeff": coefficient_to_json(c)})
    return {"n": e.n, "terms": terms}


def element_from_json(data: dict):
    from .qkring import QKElement
    n = int(data["n"])
    out = {}
    for t in data["terms"]:
        w = TildeIndex(int(t["i"]), int(t["j"]), n)
        c = TorusCoefficient(n - 1, {tuple(m["exp"]): int(m["c"]) for m in t["coeff"]})
        out[w] = c
    return QKElement(n, out)


def dumps(obj: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent."""
    return json.dumps(obj, indent=2, sort_keys=True)
