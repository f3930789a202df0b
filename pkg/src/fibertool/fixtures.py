"""Frozen regression fixtures built from the worked examples.

Every check reaches the library through module attributes, so patching a
single function (a bound constant, the lattice scale) is visible here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import count, curve, pell, reduce
from .poly import BiPoly, UniPoly

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _sharp_family():
    got = [curve.param_points(reduce.PolyParam.parse("t^3", "t"), m**3).count for m in (2, 5, 10)]
    return got == [5, 11, 21], f"counts {got}, expected [5, 11, 21]"


def _epsilon_necessity():
    msgs = []
    for d in (2, 4):
        p = UniPoly.parse(f"t^{d} - 1")
        for k in (3, 5, 10):
            B = k**d - 1
            rep = count.enumerate_M(p, B, HALF)
            if B < count.bound_threshold(p, HALF):
                msgs.append(f"d={d} k={k} below the bound threshold")
                continue
            ok = (rep.count == 2 * k + 1
                  and k**d > B  # 2k + 1 > 2 B^(1/d) + 1, exactly
                  and rep.count > count.bound_M(p, B, 0)
                  and rep.count <= count.bound_M(p, B, HALF))
            if not ok:
                msgs.append(f"d={d} k={k} count={rep.count}")
    return not msgs, "; ".join(msgs) or "2k+1 attained, eps = 0 bound beaten, eps = 1/2 bound kept"


def _intval():
    p = UniPoly.parse("(t-1)*(t-2)/2")
    rep = count.enumerate_M(p, 36, HALF)
    want = tuple(Fraction(t) for t in range(-7, 11))
    return rep.parameters == want, f"count {rep.count}, expected 18 (t in -7..10)"


def _oracle_equivalence():
    spec = curve.CurveSpec.parse("x - y^2 - y")
    param = reduce.PolyParam.parse("4*t^2 + 2*t", "2*t")
    fast = curve.param_points(param, 200)
    slow = curve.bruteforce_points(spec, 200)
    return fast.points == slow.points, f"param {fast.count} points, brute force {slow.count}"


def _count_m_oracle():
    p = UniPoly.parse("t^2 - 1")
    fast = count.enumerate_M(p, 99, HALF)
    slow = count.oracle_M(p, 99)
    ok = fast.count == 21 and set(fast.parameters) == set(slow.parameters)
    return ok, f"enumerate {fast.count}, oracle {slow.count}"


def _window():
    w = count.window(UniPoly.parse("t^2"), 100, HALF)
    ok = (w.t_minus, w.t_plus) == (Fraction(-21, 2), Fraction(21, 2))
    return ok, f"window [{w.t_minus}, {w.t_plus}]"


def _pell():
    fund = pell.fundamental_solution(2)
    sols = [(s.x, s.y) for s in pell.solutions_up_to(2, 100)]
    grid = pell.pell_grid_scan(2, 1, 100)
    ok = (fund.x, fund.y) == (3, 2) and sols == grid and len(sols) == 14
    return ok, f"fundamental ({fund.x}, {fund.y}), {len(sols)} solutions, grid scan {len(grid)}"


def _reduction():
    res = reduce.normalize_curve(BiPoly.parse("x - y^3"), 0, reduce.PolyParam.parse("t^3", "t"))
    ok = res.normal_form == (1, 0) and res.integral_inverse
    return ok, f"normal form {res.normal_form}, integral inverse {res.integral_inverse}"


FIXTURES = {
    "sharp-family": _sharp_family,
    "epsilon-necessity": _epsilon_necessity,
    "intval-count": _intval,
    "oracle-equivalence": _oracle_equivalence,
    "count-m-oracle": _count_m_oracle,
    "window": _window,
    "pell-d2": _pell,
    "reduction-cubic": _reduction,
}


def run_fixtures() -> list[FixtureResult]:
    out = []
    for name, fn in FIXTURES.items():
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed fixture, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(FixtureResult(name, bool(ok), detail))
    return out
