"""Exact real-root tools: integer d-th roots, rational enclosures of d-th
roots, Sturm sequences and integer-root isolation."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .poly import UniPoly, squarefree_part

# scale of the fallback enclosure: width below 10^-9 of the root
ROOT_SCALE = 10**9


def iroot(n: int, d: int) -> int:
    """floor(n ** (1/d)) for n >= 0, exactly."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if d == 1 or n < 2:
        return n
    if d == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // d)  # >= true root
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x**d > n:
        x -= 1
    while (x + 1) ** d <= n:
        x += 1
    return x


def exact_root(r: Fraction, d: int) -> Fraction | None:
    """r^(1/d) if it is rational, else None."""
    if r < 0:
        return None
    a, b = iroot(r.numerator, d), iroot(r.denominator, d)
    if a**d == r.numerator and b**d == r.denominator:
        return Fraction(a, b)
    return None


def root_upper(r: Fraction, d: int) -> Fraction:
    """Rational U with U >= r^(1/d) and U - r^(1/d) <= 1/ROOT_SCALE."""
    r = Fraction(r)
    ex = exact_root(r, d)
    if ex is not None:
        return ex
    scaled = r * ROOT_SCALE**d
    n = -(-scaled.numerator // scaled.denominator)  # ceil
    m = iroot(n, d)
    if m**d < n:
        m += 1
    return Fraction(m, ROOT_SCALE)


def root_lower(r: Fraction, d: int) -> Fraction:
    """Rational L with L <= r^(1/d) and r^(1/d) - L <= 1/ROOT_SCALE."""
    r = Fraction(r)
    ex = exact_root(r, d)
    if ex is not None:
        return ex
    scaled = r * ROOT_SCALE**d
    return Fraction(iroot(scaled.numerator // scaled.denominator, d), ROOT_SCALE)


def sturm_sequence(f: UniPoly) -> list[UniPoly]:
    """Sturm chain of the square-free part of f."""
    f = squarefree_part(f)
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(c) -> int:
    return (c > 0) - (c < 0)


def variations_at(seq, x) -> int:
    return _variations(_sign(g(x)) for g in seq)


def variations_at_pos_inf(seq) -> int:
    return _variations(_sign(g.lead) for g in seq)


def variations_at_neg_inf(seq) -> int:
    return _variations(_sign(g.lead) * (-1) ** g.degree for g in seq if not g.is_zero())


def count_roots(seq, a=None, b=None) -> int:
    """Distinct real roots in (a, b]; ``None`` bounds mean -inf / +inf.

    For a square-free Sturm chain the half-open count is exact even when
    a or b is itself a root.
    """
    va = variations_at_neg_inf(seq) if a is None else variations_at(seq, a)
    vb = variations_at_pos_inf(seq) if b is None else variations_at(seq, b)
    return va - vb


def cauchy_bound(f: UniPoly) -> Fraction:
    """Every complex root z of f satisfies |z| < the returned value."""
    if f.is_constant():
        return Fraction(1)
    lead = abs(f.lead)
    return 1 + max(abs(c) / lead for c in f.coeffs[:-1])


def integer_roots(f: UniPoly, lo: int, hi: int) -> list[int]:
    """Integer roots of a nonzero f within [lo, hi], by Sturm bisection on
    integer intervals and exact evaluation at the candidates."""
    if f.is_zero():
        raise ValueError("integer_roots of the zero polynomial")
    if f.is_constant() or lo > hi:
        return []
    bound = cauchy_bound(f)
    cap = int(bound) + 1
    lo, hi = max(lo, -cap), min(hi, cap)
    if lo > hi:
        return []
    seq = sturm_sequence(f)
    core = seq[0]
    found: list[int] = []

    def split(a: int, b: int, va: int, vb: int):
        n = va - vb
        if n <= 0:
            return
        if b - a == 1:
            if core(b) == 0:
                found.append(b)
            return
        mid = (a + b) // 2
        vm = variations_at(seq, mid)
        split(a, mid, va, vm)
        split(mid, b, vm, vb)

    split(lo - 1, hi, variations_at(seq, lo - 1), variations_at(seq, hi))
    return found
