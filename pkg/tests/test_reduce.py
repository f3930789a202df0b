import random
from fractions import Fraction

import pytest

from fibertool.automorph import apply_point, apply_poly, coordinates, has_integral_inverse, invert
from fibertool.errors import BothConstant, DegreeObstruction, ParamMismatch
from fibertool.poly import BiPoly, UniPoly
from fibertool.reduce import (
    PolyParam,
    check_nonsingular_param,
    check_proper,
    normalize_curve,
    param_lies_on,
    reduce_param,
)
from gen import random_line_image


def P(p, q):
    return PolyParam.parse(p, q)


def test_nonsingular_examples():
    assert check_nonsingular_param(P("t^3", "t"))
    assert not check_nonsingular_param(P("t^2", "t^3"))
    assert check_nonsingular_param(P("t", "4"))


def test_proper_examples():
    assert check_proper(P("t^2", "t^3"))
    assert not check_proper(P("t^2", "t^4"))
    assert check_proper(P("t", "t^7 - 3*t^2"))
    with pytest.raises(BothConstant):
        check_proper(P("1", "2"))


def test_reduce_cubic():
    res = reduce_param(P("t^3", "t"))
    assert res.final_param.p.is_constant() and res.final_param.q.degree == 1
    assert apply_poly(BiPoly.parse("x - y^3"), res.phi) == BiPoly.x()
    assert res.integral_inverse


def test_reduce_line_is_identity():
    res = reduce_param(P("0", "t"))
    assert res.phi.steps == ()
    assert res.final_param == P("0", "t")


def test_reduce_quadratic_trace():
    res = reduce_param(P("t^2 + t", "t"))
    assert res.degree_trace == ((2, 1), (1, 1))
    assert apply_point(invert(res.phi), (UniPoly.parse("t^2 + t"), UniPoly.parse("t"))) == (
        res.final_param.p, res.final_param.q)


def test_reduce_obstruction():
    with pytest.raises(DegreeObstruction):
        reduce_param(P("t^2", "t^3"))  # singular
    with pytest.raises(DegreeObstruction):
        reduce_param(P("t^2", "t^4"))  # not injective


def test_normalize_examples():
    res = normalize_curve(BiPoly.parse("x - y^3"), 0, P("t^3", "t"))
    assert res.normal_form == (1, 0) and res.integral_inverse
    res = normalize_curve(BiPoly.x(), 0, P("0", "t"))
    assert res.normal_form == (1, 0)


def test_normalize_scaled_parabola():
    # integral Phi^-1 pins the leading term: the normal form comes out as x
    P2 = BiPoly.parse("2*x - y^2 + 3")
    res = normalize_curve(P2, 3, P("t^2/2", "t"))
    a, b = res.normal_form
    assert apply_poly(P2 - 3, res.phi) == BiPoly({(1, 0): a, (0, 0): b})
    assert (a, b) == (1, 0)
    assert res.integral_inverse


def test_normalize_rejects_foreign_param():
    with pytest.raises(ParamMismatch):
        normalize_curve(BiPoly.parse("x - y^3"), 0, P("t", "t"))
    assert not param_lies_on(BiPoly.parse("x^2 - 2*y^2"), 1, P("t", "t"))


def test_rational_leading_coefficients_stay_integral():
    res = reduce_param(P("3/2*t^2 + t", "2/3*t"))
    assert res.integral_inverse_pre_shift
    X, Y = coordinates(invert(res.phi))
    assert all(c.denominator == 1 for F in (X, Y) for c in F.terms.values())


def test_degree_divisibility_and_budget():
    rng = random.Random(5)
    for _ in range(40):
        phi0, X = random_line_image(rng)
        p, q = apply_point(phi0, (UniPoly.const(0), UniPoly.identity()))
        res = reduce_param(PolyParam(p, q))
        assert len(res.degree_trace) <= p.degree + q.degree
        for dp, dq in res.degree_trace:
            assert max(dp, dq) % min(dp, dq) == 0


def test_constructed_instances_round_trip():
    rng = random.Random(6)
    for _ in range(100):
        phi0, X = random_line_image(rng)
        k = rng.randint(-3, 3)
        p, q = apply_point(phi0, (UniPoly.const(k), UniPoly.identity()))
        res = normalize_curve(X, k, PolyParam(p, q))
        a, b = res.normal_form
        assert a != 0
        assert apply_poly(X - k, res.phi) == BiPoly({(1, 0): a, (0, 0): b})
        assert has_integral_inverse(res.phi)


def test_result_json_has_rationals_as_strings():
    out = reduce_param(P("t^2/2 + 1/3", "t")).to_json()
    assert isinstance(out["jacobian"], str)
    assert out["final_param"]["q"]
