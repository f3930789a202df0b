"""Integral points on plane curves P(x, y) = k.

Two independent routes: a brute-force sweep over x that extracts integer
roots in y, and the fast route through a polynomial parametrisation, which
scans rational parameters t = m/g inside the certified windows of both
coordinates. Also bound evaluation, the projective Maillet-form
classification and the large-constant baseline bound.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import count, scan
from .errors import BelowThreshold, ConstantCoordinate, InputError, ParseError
from .poly import BiPoly, UniPoly, as_rat, gcd_uni, primitive_form, squarefree_part
from .reduce import PolyParam
from .roots import count_roots, integer_roots, root_upper, sturm_sequence


@dataclass(frozen=True)
class CurveSpec:
    P: BiPoly
    k: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "k", as_rat(self.k))
        if self.P.total_degree < 1:
            raise InputError("P must be non-constant")

    @classmethod
    def parse(cls, P: str, k="0", name: str = "") -> CurveSpec:
        return cls(BiPoly.parse(P), as_rat(k), name)

    def contains(self, x, y) -> bool:
        return self.P(as_rat(x), as_rat(y)) == self.k


@dataclass(frozen=True)
class NReport:
    B: int
    points: tuple[tuple[int, int], ...]
    count: int
    bound_value: Fraction | None = None
    singular_budget: int = 0
    walkowiak_value: Fraction | None = None
    bound_holds: bool | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self, with_points: bool = True) -> dict:
        out = {"B": self.B, "count": self.count, "singular_budget": self.singular_budget}
        if self.bound_value is not None:
            out["bound_value"] = str(self.bound_value)
            out["bound_value_approx"] = float(self.bound_value)
            out["bound_holds"] = self.bound_holds
        if self.walkowiak_value is not None:
            out["walkowiak_value_approx"] = float(self.walkowiak_value)
        if with_points:
            out["points"] = [list(p) for p in self.points]
        out.update(self.extra)
        return out


def _fiber_roots(f: UniPoly, B: int) -> list[int]:
    """Integer roots of f in [-B, B]; cheap closed forms for degree <= 2."""
    d = f.degree
    if d == 1:
        r = -f.coeff(0) / f.coeff(1)
        return [int(r)] if r.denominator == 1 and abs(r) <= B else []
    if d == 2:
        c, b, a = f.coeffs
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        n, m = disc.numerator, disc.denominator
        rn, rm = math.isqrt(n), math.isqrt(m)
        if rn * rn != n or rm * rm != m:
            return []
        sq = Fraction(rn, rm)
        out = set()
        for r in ((-b + sq) / (2 * a), (-b - sq) / (2 * a)):
            if r.denominator == 1 and abs(r) <= B:
                out.add(int(r))
        return sorted(out)
    return integer_roots(f, -B, B)


def bruteforce_points(spec: CurveSpec, B: int) -> NReport:
    """Oracle: every integer point with |x|, |y| <= B, one x-fiber at a time.

    A fiber with P(x0, y) - k identically zero is a vertical line component;
    it is listed (clipped to |y| <= B) and flagged in ``extra``.
    """
    pts = []
    vertical = []
    for x0 in range(-B, B + 1):
        f = spec.P.in_y(x0) - spec.k
        if f.is_zero():
            vertical.append(x0)
            pts.extend((x0, y) for y in range(-B, B + 1))
            continue
        if f.is_constant():
            continue
        pts.extend((x0, y) for y in _fiber_roots(f, B))
    pts.sort()
    extra = {"method": "bruteforce"}
    if vertical:
        extra["vertical_components"] = vertical
    return NReport(B, tuple(pts), len(pts), extra=extra)


def implicitize_check(spec: CurveSpec, param: PolyParam) -> bool:
    return (spec.P(param.p, param.q) - spec.k).is_zero()


def singular_budget(d: int) -> int:
    if d < 1:
        raise InputError("d must be >= 1")
    return (d - 1) * (d - 2) // 2


def _nonconstant(param: PolyParam) -> list[UniPoly]:
    coords = [f for f in (param.p, param.q) if not f.is_constant()]
    if not coords:
        raise ConstantCoordinate("both coordinates of the parametrisation are constant")
    return coords


def _constants_ok(param: PolyParam, B: int) -> bool:
    for f in (param.p, param.q):
        if f.is_constant():
            c = f.coeff(0)
            if c.denominator != 1 or abs(c) > B:
                return False
    return True


def lattice_scale(param: PolyParam) -> int:
    """g with every admissible parameter in (1/g)Z: the gcd of the leading
    numerators of the primitive forms of the non-constant coordinates."""
    g = 0
    for f in _nonconstant(param):
        g = math.gcd(g, abs(primitive_form(f).lead))
    return g


def param_threshold(param: PolyParam, epsilon) -> int:
    return max(count.find_B0(f, epsilon) for f in _nonconstant(param))


def _param_range(param: PolyParam, B: int, epsilon, g: int):
    B0 = param_threshold(param, epsilon)
    if B < B0:
        raise BelowThreshold(B, B0)
    lo_t, hi_t = None, None
    for f in _nonconstant(param):
        w = count.window(f, B, epsilon, B0=B0)
        lo_t = w.t_minus if lo_t is None else max(lo_t, w.t_minus)
        hi_t = w.t_plus if hi_t is None else min(hi_t, w.t_plus)
    return B0, math.ceil(g * lo_t), math.floor(g * hi_t)


def param_points(param: PolyParam, B: int, epsilon=Fraction(1, 2), workers: int = 1) -> NReport:
    """Integral points reached by rational parameters, via the lattice scan."""
    coords = _nonconstant(param)
    g = lattice_scale(param)
    B0, lo, hi = _param_range(param, B, epsilon, g)
    pts: set = set()
    if _constants_ok(param, B):
        ms = scan.lattice_scan([primitive_form(f) for f in coords], g, B, lo, hi, workers)
        for m in ms:
            t = Fraction(m, g)
            pts.add((int(param.p(t)), int(param.q(t))))
    points = tuple(sorted(pts))
    return NReport(B, points, len(points),
                   extra={"method": "param", "B0": B0, "lattice_scale": g,
                          "candidates": max(0, hi - lo + 1)})


def _linear_interval(f: UniPoly, B: int):
    """Exact t-interval where |f(t)| <= B, f of degree one."""
    a, c = f.coeff(1), f.coeff(0)
    ends = sorted(((-B - c) / a, (B - c) / a))
    return ends[0], ends[1]


def count_param_points(param: PolyParam, B: int, epsilon=Fraction(1, 2)) -> int:
    """Number of points of param_points; arithmetic for linear parametrisations."""
    coords = _nonconstant(param)
    if any(f.degree > 1 for f in coords):
        return param_points(param, B, epsilon).count
    B0 = param_threshold(param, epsilon)
    if B < B0:
        raise BelowThreshold(B, B0)
    if not _constants_ok(param, B):
        return 0
    g = lattice_scale(param)
    lo_t, hi_t = None, None
    for f in coords:
        a, b = _linear_interval(f, B)
        lo_t = a if lo_t is None else max(lo_t, a)
        hi_t = b if hi_t is None else min(hi_t, b)
    lo, hi = math.ceil(g * lo_t), math.floor(g * hi_t)
    if lo > hi:
        return 0
    forms = [scan.ScaledForm(primitive_form(f), g) for f in coords]
    period = 1
    for f in forms:
        period = math.lcm(period, f.modulus)
    total = 0
    for r in range(period):
        if all(f.value(r) % f.modulus == 0 for f in forms):
            # m = r + j*period inside [lo, hi]
            total += (hi - r) // period - (lo - r - 1) // period
    return total


def dominant_coordinate(param: PolyParam) -> UniPoly:
    coords = _nonconstant(param)
    return max(coords, key=lambda f: f.degree)


def theorem_bound(param: PolyParam, B: int, epsilon=Fraction(1, 2),
                  with_singular: bool = False) -> Fraction:
    f = dominant_coordinate(param)
    bound = count.bound_M(f, B, epsilon)
    if with_singular:
        bound += singular_budget(f.degree)
    return bound




def _atanh_upper(u: Fraction, terms: int) -> Fraction:
    """sum u^(2n+1)/(2n+1) plus a geometric bound on the tail, so >= atanh(u)."""
    acc = Fraction(0)
    for n in range(terms):
        acc += u ** (2 * n + 1) / (2 * n + 1)
    return acc + u ** (2 * terms + 1) / ((2 * terms + 1) * (1 - u * u))


_LN2_UP = 2 * _atanh_upper(Fraction(1, 3), 20)


def _ln_upper(B: int, terms: int = 12) -> Fraction:
    """A rational >= ln(B): B = 2^e * r with r in [1, 2), and
    ln r = 2 * sum u^(2n+1)/(2n+1), u = (r-1)/(r+1) <= 1/3, with the tail
    after ``terms`` terms bounded by a geometric series."""
    e = B.bit_length() - 1
    r = Fraction(B, 1 << e)
    return e * _LN2_UP + 2 * _atanh_upper((r - 1) / (r + 1), terms)


def walkowiak_bound(d: int, B: int) -> Fraction:
    """Over-approximation of 2^48 d^8 ln(B)^5 B^(1/d)."""
    if d < 1 or B < 2:
        raise InputError("need d >= 1 and B >= 2")
    return 2**48 * d**8 * _ln_upper(B) ** 5 * root_upper(Fraction(B), d)


def bound_threshold(param: PolyParam, epsilon=Fraction(1, 2)) -> int:
    """B from which theorem_bound provably holds: each point has a parameter
    in M(dominant coordinate, B)."""
    return count.bound_threshold(dominant_coordinate(param), epsilon)


def count_with_bounds(param: PolyParam, B: int, epsilon=Fraction(1, 2),
                      with_singular: bool = False, workers: int = 1) -> NReport:
    rep = param_points(param, B, epsilon, workers)
    d = dominant_coordinate(param).degree
    bound = theorem_bound(param, B, epsilon, with_singular)
    wk = walkowiak_bound(d, max(B, 2))
    bB0 = bound_threshold(param, epsilon)
    extra = dict(rep.extra, bound_B0=bB0, bound_certified=B >= bB0,
                 walkowiak_exceeds_bound=wk > bound)
    return NReport(B, rep.points, rep.count, bound, singular_budget(d), wk,
                   rep.count <= bound, extra)


# -- projective parametrisations ---------------------------------------------

class FiberClass(enum.Enum):
    LINE_LIKE = "line-like"
    PELL_LIKE = "pell-like"
    OTHER = "other"


def _homogeneous_degree(F: BiPoly):
    degs = {i + j for (i, j) in F.terms}
    if len(degs) != 1:
        raise InputError(f"{F.to_str(('t', 's'))} is not homogeneous")
    return degs.pop()


def dehomogenize(F: BiPoly) -> UniPoly:
    """F(t, 1)."""
    out = {}
    for (i, _j), c in F.terms.items():
        out[i] = out.get(i, 0) + c
    return UniPoly([out.get(i, 0) for i in range(max(out, default=-1) + 1)])


@dataclass(frozen=True)
class ProjectiveParam:
    p_bar: BiPoly
    q_bar: BiPoly
    r_bar: BiPoly

    def __post_init__(self):
        comps = (self.p_bar, self.q_bar, self.r_bar)
        for F in comps:
            if F.is_zero():
                raise InputError("projective components must be nonzero")
            if any(c.denominator != 1 for c in F.terms.values()):
                raise InputError("projective components need integer coefficients")
        degs = {_homogeneous_degree(F) for F in comps}
        if len(degs) != 1:
            raise InputError("projective components have different degrees")
        # common factor: a power of s, or the homogenisation of a common factor of F(t, 1)
        if all(all(j > 0 for (_i, j) in F.terms) for F in comps):
            raise InputError("components share the factor s")
        g = UniPoly.const(0)
        for F in comps:
            g = gcd_uni(g, dehomogenize(F))
        if g.degree > 0:
            raise InputError("components share a non-constant factor")

    @property
    def degree(self) -> int:
        return _homogeneous_degree(self.r_bar)

    @classmethod
    def parse(cls, p: str, q: str, r: str) -> ProjectiveParam:
        vs = ("t", "s")
        return cls(BiPoly.parse(p, vs), BiPoly.parse(q, vs), BiPoly.parse(r, vs))


def _root_profile(F: BiPoly):
    """(distinct projective roots, real ones, multiplicities are all equal to m or None)."""
    d = _homogeneous_degree(F)
    f = dehomogenize(F)
    inf_mult = d - f.degree
    sq = squarefree_part(f) if f.degree > 0 else UniPoly.const(1)
    distinct = sq.degree + (1 if inf_mult else 0)
    real = (count_roots(sturm_sequence(sq)) if sq.degree > 0 else 0) + (1 if inf_mult else 0)
    return d, f, inf_mult, sq, distinct, real


def projective_root_count(F: BiPoly, real_only: bool = False) -> int:
    _, _, _, _, distinct, real = _root_profile(F)
    return real if real_only else distinct


def classify_maillet_form(param: ProjectiveParam) -> FiberClass:
    """LineLike when r_bar = a * l^d for a linear form l (a*t^d up to a change of
    the (t, s) frame), PellLike when r_bar = a * Q^(d/2) with Q a real-split
    quadratic form, Other otherwise."""
    d, f, inf_mult, sq, distinct, real = _root_profile(param.r_bar)
    if distinct == 1:
        # one root of multiplicity d; real since it is rational
        return FiberClass.LINE_LIKE
    if distinct != 2 or real != 2 or d % 2:
        return FiberClass.OTHER
    n = d // 2
    if inf_mult not in (0, n):
        return FiberClass.OTHER
    # both roots have multiplicity n iff f is a constant times sq^n
    base = sq.monic() ** n
    if f.degree != base.degree:
        return FiberClass.OTHER
    return FiberClass.PELL_LIKE if f == base * f.lead else FiberClass.OTHER


def homogenize_param(param: PolyParam) -> ProjectiveParam:
    """(p, q) -> (s^d p(t/s), s^d q(t/s), s^d) with integer coefficients."""
    d = max(param.p.degree, param.q.degree, 0)
    den = 1
    for f in (param.p, param.q):
        for c in f.coeffs:
            den = math.lcm(den, c.denominator)

    def hom(f: UniPoly) -> BiPoly:
        return BiPoly({(i, d - i): c * den for i, c in enumerate(f.coeffs) if c})

    return ProjectiveParam(hom(param.p), hom(param.q), BiPoly({(0, d): den}))


def parse_curve_entry(raw: dict):
    """A corpus line -> (CurveSpec, PolyParam or None, tags)."""
    try:
        spec = CurveSpec.parse(raw["P"], raw.get("k", "0"), raw.get("name", ""))
    except KeyError as exc:
        raise ParseError(f"corpus entry lacks field {exc}") from None
    param = None
    if raw.get("param_p") is not None and raw.get("param_q") is not None:
        param = PolyParam.parse(str(raw["param_p"]), str(raw["param_q"]))
    return spec, param, tuple(raw.get("tags", ()))
