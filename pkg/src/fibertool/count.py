"""Counting rational parameters with integral bounded values.

M(p, B) is the set of rational t with p(t) an integer and |p(t)| <= B. The
fast route scans the lattice (1/a_d)Z inside a certified window; the oracle
solves p(t) = k for every integer |k| <= B with the rational root theorem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import scan
from .errors import BelowThreshold, ConstantPolynomial
from .poly import UniPoly, as_rat, primitive_form
from .roots import count_roots, iroot, root_lower, root_upper, sturm_sequence

# doubling search gives up beyond 2**MAX_DOUBLINGS
MAX_DOUBLINGS = 400


def _require_nonconstant(p: UniPoly):
    if p.is_constant():
        raise ConstantPolynomial(f"{p} has degree < 1")


def oriented(p: UniPoly) -> UniPoly:
    """p or -p, whichever has a positive leading coefficient (|p| is unchanged)."""
    return -p if p.lead < 0 else p


def sigma(p: UniPoly) -> Fraction:
    _require_nonconstant(p)
    pf = primitive_form(p)
    d = pf.degree
    return Fraction(-pf.numerator_coeffs[d - 1], d * pf.numerator_coeffs[d])


@dataclass(frozen=True)
class CountWindow:
    sigma: Fraction
    epsilon: Fraction
    t_plus: Fraction
    t_minus: Fraction
    B: int
    B0: int

    def contains(self, t) -> bool:
        return self.t_minus <= t <= self.t_plus

    def to_json(self) -> dict:
        return {
            "sigma": str(self.sigma),
            "epsilon": str(self.epsilon),
            "t_plus": str(self.t_plus),
            "t_minus": str(self.t_minus),
            "t_plus_approx": float(self.t_plus),
            "t_minus_approx": float(self.t_minus),
            "B": self.B,
            "B0": self.B0,
        }


def _tail_polys(p: UniPoly, eps: Fraction):
    """g(s) = p(s+sigma+eps) - a s^d and h(s) = (-1)^d p(-s+sigma-eps) - a s^d.

    Both have leading coefficient d*a*eps > 0.
    """
    d, a, sg = p.degree, p.lead, sigma(p)
    top = UniPoly.monomial(a, d)
    g = p.shift(sg + eps) - top
    h = p(UniPoly((sg - eps, -1))) * (-1) ** d - top
    return g, h


def _certified_at(p, eps, B, tails, dp) -> bool:
    d, a, sg = p.degree, p.lead, sigma(p)
    s_lo = root_lower(Fraction(B) / a, d)
    for f, seq in tails:
        if f(s_lo) <= 0 or count_roots(seq, s_lo, None):
            return False
    deriv, dp_seq = dp
    t_lo = s_lo + sg + eps
    t_hi = -s_lo + sg - eps
    if deriv(t_lo) <= 0 or count_roots(dp_seq, t_lo, None):
        return False
    if deriv(t_hi) * (-1) ** d >= 0 or count_roots(dp_seq, None, t_hi):
        return False
    return True


@lru_cache(maxsize=512)
def _find_B0_cached(coeffs: tuple, eps: Fraction) -> int:
    p = UniPoly(coeffs)
    tails = [(f, sturm_sequence(f)) for f in _tail_polys(p, eps)]
    deriv = p.derivative()
    dp = (deriv, sturm_sequence(deriv))
    B = 1
    for _ in range(MAX_DOUBLINGS):
        if _certified_at(p, eps, B, tails, dp):
            return B
        B *= 2
    raise RuntimeError(f"no certified threshold found for {p} below 2^{MAX_DOUBLINGS}")


def find_B0(p: UniPoly, epsilon) -> int:
    """Smallest power of two B0 such that, for every B >= B0, |p(t)| > B
    outside [t_minus(B), t_plus(B)].

    The certificate: the tail polynomials g, h stay positive beyond the
    lower root bound s_lo(B0) and p is strictly monotone beyond the window
    edges, both checked by Sturm root counts. Positivity beyond s_lo(B0)
    covers every larger B since s(B) only grows.
    """
    _require_nonconstant(p)
    eps = as_rat(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return _find_B0_cached(oriented(p).coeffs, eps)


def window(p: UniPoly, B: int, epsilon, B0: int | None = None) -> CountWindow:
    _require_nonconstant(p)
    eps = as_rat(epsilon)
    q = oriented(p)
    if B0 is None:
        B0 = find_B0(q, eps)
    if B < B0:
        raise BelowThreshold(B, B0)
    R = root_upper(Fraction(B) / q.lead, q.degree)
    sg = sigma(q)
    return CountWindow(sg, eps, R + sg + eps, -R + sg - eps, B, B0)


@dataclass(frozen=True)
class MReport:
    B: int
    parameters: tuple[Fraction, ...]
    count: int
    bound_value: Fraction | None
    bound_holds: bool | None
    window: CountWindow | None = None
    oracle_parameters: tuple[Fraction, ...] | None = None
    extra: dict = field(default_factory=dict)

    @property
    def match(self) -> bool | None:
        if self.oracle_parameters is None:
            return None
        return set(self.parameters) == set(self.oracle_parameters)

    def to_json(self, with_parameters: bool = True) -> dict:
        out = {"B": self.B, "count": self.count}
        if self.bound_value is not None:
            out["bound_value"] = str(self.bound_value)
            out["bound_value_approx"] = float(self.bound_value)
            out["bound_holds"] = self.bound_holds
        if self.window is not None:
            out["window"] = self.window.to_json()
        if with_parameters:
            out["parameters"] = [str(t) for t in self.parameters]
        if self.oracle_parameters is not None:
            out["oracle_count"] = len(self.oracle_parameters)
            out["match"] = self.match
        out.update(self.extra)
        return out


def bound_M(p: UniPoly, B: int, epsilon) -> Fraction:
    """Rational over-approximation (within 1e-6) of
    2 * a_d^(1-1/d) * b^(1/d) * B^(1/d) + 1 + epsilon."""
    _require_nonconstant(p)
    pf = primitive_form(oriented(p))
    d, a, b = pf.degree, pf.lead, pf.denom
    return 2 * root_upper(Fraction(a ** (d - 1) * b * B), d) + 1 + as_rat(epsilon)


def bound_threshold(p: UniPoly, epsilon) -> int:
    """B0 from which bound_M(p, B, epsilon) provably dominates |M(p, B)|.

    M(p, B) sits on the lattice (1/a)Z inside a window of width 2R + 2e, so it
    has at most 2aR + 2ae + 1 points; 2aR is the main term of bound_M. The
    count bound therefore needs the window certified at e = epsilon/(2a).
    """
    _require_nonconstant(p)
    a = abs(primitive_form(p).lead)
    return find_B0(p, as_rat(epsilon) / (2 * a))


def enumerate_M(p: UniPoly, B: int, epsilon, workers: int = 1) -> MReport:
    w = window(p, B, epsilon)
    pf = primitive_form(p)
    a = abs(pf.lead)
    lo = math.ceil(a * w.t_minus)
    hi = math.floor(a * w.t_plus)
    ms = scan.lattice_scan([pf], a, B, lo, hi, workers)
    params = tuple(Fraction(m, a) for m in ms)
    bound = bound_M(p, B, epsilon)
    return MReport(B, params, len(params), bound, len(params) <= bound, w,
                   extra={"candidates": hi - lo + 1 if hi >= lo else 0,
                          "bound_B0": bound_threshold(p, epsilon)})


def count_M(p: UniPoly, B: int, epsilon, workers: int = 1) -> int:
    """|M(p, B)|; degree one has exactly one preimage per integer value."""
    _require_nonconstant(p)
    if p.degree == 1:
        window(p, B, epsilon)  # precondition check only
        return 2 * B + 1
    return enumerate_M(p, B, epsilon, workers).count


# -- oracle -----------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _divisors(n: int) -> tuple[int, ...]:
    n = abs(n)
    factors: dict[int, int] = {}
    m, f = n, 2
    while f * f <= m:
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    divs = [1]
    for prime, e in factors.items():
        divs = [x * prime**k for x in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def _root_radius(c: list[int]) -> int:
    """Integer R with |z| <= R for every complex root z (Fujiwara's bound)."""
    n = len(c) - 1
    lead = abs(c[-1])
    best = 0
    for i in range(1, n + 1):
        coef = abs(c[n - i])
        if not coef:
            continue
        if i == n:
            coef = -(-coef // 2)
        ratio = -(-coef // lead)
        r = iroot(ratio, i)
        if r**i < ratio:
            r += 1
        best = max(best, r)
    return 2 * best


def rational_roots(c: list[int]) -> list[Fraction]:
    """Distinct rational roots of sum c[i] t^i (integer coefficients, c[-1] != 0)."""
    roots = []
    if len(c) > 1 and c[0] == 0:
        roots.append(Fraction(0))
        while c[0] == 0:
            c = c[1:]
    n = len(c) - 1
    if n == 0:
        return roots
    R = _root_radius(c)
    for s in _divisors(c[-1]):
        for r in _divisors(c[0]):
            if r > s * R:
                break
            if math.gcd(r, s) != 1:
                continue
            for num in (r, -r):
                acc = 0
                sp = 1
                # sum c_i num^i s^(n-i), evaluated from the top
                for ci in reversed(c):
                    acc = acc * num + ci * sp
                    sp *= s
                if acc == 0:
                    roots.append(Fraction(num, s))
    return roots


def oracle_M(p: UniPoly, B: int) -> MReport:
    """M(p, B) by solving p(t) = k for each integer k in [-B, B]."""
    _require_nonconstant(p)
    pf = primitive_form(p)
    base = list(pf.numerator_coeffs)
    found = set()
    for k in range(-B, B + 1):
        c = list(base)
        c[0] -= pf.denom * k
        found.update(rational_roots(c))
    params = tuple(sorted(found))
    return MReport(B, params, len(params), None, None)
