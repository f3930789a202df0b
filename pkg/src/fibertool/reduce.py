"""Degree reduction of a polynomial line parametrisation.

Starting from (p(t), q(t)), repeatedly kill the leading term of the
higher-degree coordinate with a power of the other one, using integral
elementary maps applied to the parametrisation. Those maps compose to the
inverse of the certifying automorphism Phi, so Phi^-1 has integer
coefficients by construction, and the curve ends up on a vertical line.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .automorph import (
    PlaneAutomorphism,
    Shift,
    Swap,
    Triangular,
    apply_point,
    apply_poly,
    has_integral_inverse,
    invert,
    jacobian_det,
    simplify,
)
from .errors import BothConstant, DegreeObstruction, NotReduced, ParamMismatch
from .poly import BiPoly, UniPoly, as_rat, gcd_uni


@dataclass(frozen=True)
class PolyParam:
    p: UniPoly
    q: UniPoly

    @classmethod
    def parse(cls, p: str, q: str, var: str = "t") -> PolyParam:
        return cls(UniPoly.parse(p, var), UniPoly.parse(q, var))

    def __call__(self, t):
        return self.p(t), self.q(t)

    @property
    def degrees(self):
        return self.p.degree, self.q.degree

    def to_json(self) -> dict:
        return {"p": self.p.to_str(), "q": self.q.to_str()}


@dataclass(frozen=True)
class ReductionResult:
    phi: PlaneAutomorphism
    final_param: PolyParam
    normal_form: tuple[Fraction, Fraction] | None
    integral_inverse: bool
    integral_inverse_pre_shift: bool
    degree_trace: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        out = {
            "phi": self.phi.to_json(),
            "phi_inverse": invert(self.phi).to_json(),
            "final_param": self.final_param.to_json(),
            "normal_form": None,
            "integral_inverse": self.integral_inverse,
            "integral_inverse_pre_shift": self.integral_inverse_pre_shift,
            "jacobian": str(jacobian_det(self.phi)),
            "degree_trace": [list(d) for d in self.degree_trace],
        }
        if self.normal_form is not None:
            a, b = self.normal_form
            out["normal_form"] = {"a": str(a), "b": str(b)}
        return out


def check_nonsingular_param(param: PolyParam) -> bool:
    dp, dq = param.p.derivative(), param.q.derivative()
    if dp.is_zero() and dq.is_zero():
        return False
    return gcd_uni(dp, dq).degree == 0


def _difference_quotient(f: UniPoly, t0: int) -> UniPoly:
    """s -> (f(s) - f(t0)) / (s - t0)."""
    return (f - f(t0)) // UniPoly((-t0, 1))


def check_proper(param: PolyParam) -> bool:
    """Injectivity of t -> (p(t), q(t)) over the algebraic closure.

    The bivariate gcd G(t, s) of the two difference quotients has a constant
    leading coefficient in s, so it is constant iff its specialisation at
    some t0 is. When G is constant, the s-resultant is a nonzero polynomial
    in t of degree <= (deg p - 1)(deg q - 1), hence nonzero at one of that
    many + 1 integer points.
    """
    p, q = param.p, param.q
    if p.is_constant() and q.is_constant():
        raise BothConstant("both coordinates of the parametrisation are constant")
    if p.is_constant():
        return q.degree == 1
    if q.is_constant():
        return p.degree == 1
    tries = (p.degree - 1) * (q.degree - 1) + 1
    for t0 in range(tries):
        g = gcd_uni(_difference_quotient(p, t0), _difference_quotient(q, t0))
        if g.degree == 0:
            return True
    return False


def _killing_step(base: UniPoly, target: UniPoly, ell: int) -> Triangular:
    """Integral (x, y) -> (x, mu*y + nu*x^ell) with deg(mu*target + nu*base^ell) < deg target."""
    a, b = base.lead.numerator, base.lead.denominator
    a2, b2 = target.lead.numerator, target.lead.denominator
    mu, nu = a**ell * b2, -a2 * b**ell
    g = gcd(mu, nu)
    mu, nu = mu // g, nu // g
    if mu < 0:
        mu, nu = -mu, -nu
    return Triangular(1, mu, UniPoly.monomial(nu, ell))


def reduce_param(param: PolyParam) -> ReductionResult:
    if not check_proper(param):
        raise DegreeObstruction(f"parametrisation {param.to_json()} is not injective")
    if not check_nonsingular_param(param):
        raise DegreeObstruction(f"parametrisation {param.to_json()} is singular")

    p, q = param.p, param.q
    moves: list = []  # maps applied to the parametrisation; they compose to Phi^-1
    trace: list[tuple[int, int]] = []
    budget = p.degree + q.degree
    while p.degree > 0 and q.degree > 0:
        dp, dq = p.degree, q.degree
        trace.append((dp, dq))
        if len(trace) > budget:
            raise NotReduced("reduction loop did not terminate within deg p + deg q steps")
        if dq % dp == 0:
            step = _killing_step(p, q, dq // dp)
            moves.append(step)
            p, q = step.apply((p, q))
        elif dp % dq == 0:
            step = _killing_step(q, p, dp // dq)
            moves += [Swap(), step, Swap()]
            q, p = step.apply((q, p))
        else:
            raise DegreeObstruction(f"neither of degrees {dp}, {dq} divides the other")

    if q.degree == 1 and p.is_constant():
        pass
    elif p.degree == 1 and q.is_constant():
        moves.append(Swap())
        p, q = q, p
    else:
        raise NotReduced(f"loop ended at degrees {p.degree}, {q.degree}")

    pre_shift = simplify(PlaneAutomorphism(tuple(moves)))
    e, c = p.coeff(0), q.coeff(0)
    if (e or c) and e.denominator == 1 and c.denominator == 1:
        moves.append(Shift(-e, -c))
        p, q = p - e, q - c
    phi_inv = simplify(PlaneAutomorphism(tuple(moves)))

    final = PolyParam(p, q)
    if apply_point(phi_inv, (param.p, param.q)) != (final.p, final.q):
        raise NotReduced("Phi^-1 does not carry the parametrisation onto the final line")
    phi = invert(phi_inv)
    return ReductionResult(
        phi=phi,
        final_param=final,
        normal_form=None,
        integral_inverse=has_integral_inverse(phi),
        integral_inverse_pre_shift=has_integral_inverse(invert(pre_shift)),
        degree_trace=tuple(trace),
    )


def param_lies_on(P: BiPoly, k, param: PolyParam) -> bool:
    return (P(param.p, param.q) - as_rat(k)).is_zero()


def normalize_curve(P: BiPoly, k, param: PolyParam) -> ReductionResult:
    k = as_rat(k)
    if not param_lies_on(P, k, param):
        raise ParamMismatch("P(p(t), q(t)) - k is not identically zero")
    res = reduce_param(param)
    phi, final = res.phi, res.final_param
    F = apply_poly(P - k, phi)
    keys = set(F.terms)
    if not keys <= {(1, 0), (0, 0)} or not F.coeff(1, 0):
        if keys <= {(0, 1), (0, 0)} and F.coeff(0, 1):
            phi = PlaneAutomorphism((Swap(),)).then(phi)
            final = PolyParam(final.q, final.p)
            F = F.swap_xy()
        else:
            raise NotReduced(f"(P - k) o Phi = {F} is not of the form a*x + b")
    return ReductionResult(
        phi=phi,
        final_param=final,
        normal_form=(F.coeff(1, 0), F.coeff(0, 0)),
        integral_inverse=has_integral_inverse(phi),
        integral_inverse_pre_shift=res.integral_inverse_pre_shift,
        degree_trace=res.degree_trace,
    )
