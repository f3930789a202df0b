"""Exact rational arithmetic and univariate/bivariate polynomial algebra.

Every coefficient is a :class:`fractions.Fraction`; nothing here ever touches
floating point. ``UniPoly`` is dense (low degree first), ``BiPoly`` is a
sparse map from exponent pairs to nonzero coefficients.

Text format (parser and printer round-trip)::

    x^2 - 2*y^2
    1/2*t^2 - 3/2*t + 1

The parser also accepts parentheses, products, ``**`` and division by
constants, e.g. ``(t-1)*(t-2)/2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, ZeroPolynomial

Rat = Fraction

# Degree of the zero polynomial. Compares below every integer degree and
# refuses integer arithmetic (``%`` raises), so it can't leak into divisibility
# tests unnoticed.
DEG_ZERO = float("-inf")


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"n"``/``"n/d"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def is_integral(c: Fraction) -> bool:
    return c.denominator == 1


def _lift(value, scalar: Fraction):
    """Return ``scalar`` inside the ring of ``value`` (identity for numbers)."""
    if isinstance(value, (int, Fraction)):
        return scalar
    return value * 0 + scalar


class UniPoly:
    """Dense univariate polynomial over Q; ``coeffs[i]`` multiplies t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> UniPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c, n: int) -> UniPoly:
        return cls([0] * n + [c])

    @classmethod
    def identity(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str, var: str = "t") -> UniPoly:
        terms = _parse_poly(text, (var,))
        if not terms:
            return cls()
        top = max(e[0] for e in terms)
        cs = [Fraction(0)] * (top + 1)
        for (e,), c in terms.items():
            cs[e] = c
        return cls(cs)

    # -- structure ----------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- evaluation ---------------------------------------------------------
    def __call__(self, value):
        """Horner evaluation; ``value`` may be a number or any ring element."""
        if isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            acc = Fraction(0)
        if isinstance(acc, Fraction):
            acc = _lift(value, acc)
        return acc

    def compose(self, inner: UniPoly) -> UniPoly:
        return self(inner)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UniPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return UniPoly(a * c for a in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> UniPoly:
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self * (1 / self.lead)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def shift(self, c) -> UniPoly:
        """p(t + c)."""
        return self(UniPoly((c, 1)))

    def scale_arg(self, c) -> UniPoly:
        """p(c*t)."""
        c = as_rat(c)
        out, pw = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * pw)
            pw *= c
        return UniPoly(out)

    # -- text ---------------------------------------------------------------
    def to_str(self, var: str = "t") -> str:
        terms = [((i,), c) for i, c in enumerate(self.coeffs) if c]
        terms.sort(key=lambda tc: -tc[0][0])
        return _format_terms(terms, (var,))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({self.to_str()!r})"


def gcd_uni(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_constant():
        return p
    return p // gcd_uni(p, p.derivative())


def eval_uni(p: UniPoly, t) -> Fraction:
    return p(as_rat(t))


def compose_uni(outer: UniPoly, inner: UniPoly) -> UniPoly:
    return outer.compose(inner)


@dataclass(frozen=True)
class PrimitiveForm:
    """p(t) = (1/denom) * sum(numerator_coeffs[i] * t^i) with content 1."""

    numerator_coeffs: tuple[int, ...]
    denom: int
    degree: int

    @property
    def lead(self) -> int:
        return self.numerator_coeffs[-1]

    def to_uni(self) -> UniPoly:
        return UniPoly(Fraction(a, self.denom) for a in self.numerator_coeffs)


def primitive_form(p: UniPoly) -> PrimitiveForm:
    if p.is_zero():
        raise ZeroPolynomial("primitive form of the zero polynomial")
    L = 1
    for c in p.coeffs:
        L = lcm(L, c.denominator)
    nums = [int(c * L) for c in p.coeffs]
    g = L
    for a in nums:
        g = gcd(g, a)
    return PrimitiveForm(tuple(a // g for a in nums), L // g, p.degree)


class BiPoly:
    """Sparse polynomial in x, y over Q: ``terms[(i, j)]`` multiplies x^i y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = as_rat(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms: dict[tuple[int, int], Fraction] = clean

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def from_uni(cls, p: UniPoly, var: str = "x") -> BiPoly:
        if var == "x":
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, i): c for i, c in enumerate(p.coeffs)})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] = ("x", "y")) -> BiPoly:
        return cls(_parse_poly(text, tuple(variables)))

    @property
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=DEG_ZERO)

    @property
    def deg_x(self):
        return max((i for i, _ in self.terms), default=DEG_ZERO)

    @property
    def deg_y(self):
        return max((j for _, j in self.terms), default=DEG_ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return BiPoly({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = BiPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, u, v):
        """P(u, v) for numbers, UniPolys or BiPolys (Horner in both variables)."""
        if not self.terms:
            return _lift(u, Fraction(0))
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = c
        result = None
        for j in range(max(rows), -1, -1):
            row = rows.get(j)
            if row:
                a_j = UniPoly([row.get(i, 0) for i in range(max(row) + 1)])(u)
            else:
                a_j = _lift(u, Fraction(0))
            result = a_j if result is None else result * v + a_j
        return result

    def swap_xy(self) -> BiPoly:
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def in_y(self, x0) -> UniPoly:
        """The univariate polynomial y -> P(x0, y)."""
        x0 = as_rat(x0)
        rows: dict[int, Fraction] = {}
        for (i, j), c in self.terms.items():
            rows[j] = rows.get(j, 0) + c * x0**i
        top = max(rows, default=-1)
        return UniPoly(rows.get(j, 0) for j in range(top + 1))

    def to_str(self, variables: Sequence[str] = ("x", "y")) -> str:
        terms = sorted(self.terms.items(), key=lambda kc: (-(kc[0][0] + kc[0][1]), -kc[0][0]))
        return _format_terms(terms, tuple(variables))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BiPoly({self.to_str()!r})"


def substitute_bi(P: BiPoly, u: BiPoly, v: BiPoly) -> BiPoly:
    """P(u(x,y), v(x,y)), expanded."""
    out = P(u, v)
    if isinstance(out, Fraction):
        out = BiPoly.const(out)
    return out


# ---------------------------------------------------------------------------
# text format

def _format_terms(terms, variables) -> str:
    if not terms:
        return "0"
    parts = []
    for exps, c in terms:
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exps) if e
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def _padd(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = variables
        self.one = tuple(0 for _ in variables)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, what):
        raise ParseError(f"{what} in {self.text!r}")

    def parse(self):
        if not self.toks:
            self.fail("empty polynomial")
        val = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing input at token {self.i}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            val = _padd(val, self.term(), 1 if op == "+" else -1)
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            if op == "*":
                val = _pmul(val, rhs)
            else:
                if set(rhs) - {self.one} or not rhs:
                    self.fail("division by a non-constant or zero")
                inv = 1 / rhs[self.one]
                val = {k: c * inv for k, c in val.items()}
        return val

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return {k: -c for k, c in self.unary().items()}
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num" or n.denominator != 1 or n < 0:
                self.fail("exponent must be a non-negative integer")
            out = {self.one: Fraction(1)}
            for _ in range(int(n)):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {self.one: val} if val else {}
        if kind == "var":
            if val not in self.vars:
                self.fail(f"unknown variable {val!r} (expected one of {self.vars})")
            return {tuple(int(v == val) for v in self.vars): Fraction(1)}
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail(f"unexpected token {val!r}")


def _parse_poly(text: str, variables: tuple[str, ...]) -> dict:
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {type(text).__name__}")
    return _Parser(text, variables).parse()
