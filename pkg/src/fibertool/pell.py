"""Pell conics x^2 - d*y^2 = N: continued fractions, bounded solution sets,
and the logarithmic growth of the solution count."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, PerfectSquare
from .poly import as_rat


def _check_d(d: int):
    if not isinstance(d, int) or d < 2:
        raise InputError(f"d must be an integer >= 2, got {d!r}")
    r = math.isqrt(d)
    if r * r == d:
        raise PerfectSquare(f"d = {d} is a perfect square")


@dataclass(frozen=True)
class PellForm:
    """alpha*(x^2 - d*y^2) + beta."""

    alpha: Fraction
    d: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        object.__setattr__(self, "beta", as_rat(self.beta))
        if not self.alpha:
            raise InputError("alpha must be nonzero")
        _check_d(self.d)


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    period: tuple[int, ...]


@dataclass(frozen=True, order=True)
class PellSolution:
    x: int
    y: int
    d: int

    def __post_init__(self):
        if self.x * self.x - self.d * self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.d}y^2 = 1")


def cf_sqrt(d: int) -> CFExpansion:
    """Periodic continued fraction of sqrt(d) via the (m, q, a) recurrence."""
    _check_d(d)
    a0 = math.isqrt(d)
    m, q, a = 0, 1, a0
    seen = set()
    period = []
    while True:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        if (m, q) in seen:
            break
        seen.add((m, q))
        period.append(a)
    return CFExpansion(a0, tuple(period))


def fundamental_solution(d: int) -> PellSolution:
    """Minimal positive solution from the convergent closing the first period
    (the second one when the period is odd, since the first gives -1)."""
    cf = cf_sqrt(d)
    terms = list(cf.period) * (2 if len(cf.period) % 2 else 1)
    # convergent h/k of [a0; terms[0], ..., terms[-2]]
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    for a in terms[:-1]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return PellSolution(h, k, d)


def solutions_up_to(d: int, B: int) -> list[PellSolution]:
    """Every integer solution of x^2 - d*y^2 = 1 with |x|, |y| <= B."""
    _check_d(d)
    fund = fundamental_solution(d)
    out = []
    x, y = 1, 0
    while x <= B and y <= B:
        for sx in (1, -1):
            for sy in ((1, -1) if y else (1,)):
                out.append(PellSolution(sx * x, sy * y, d))
        x, y = x * fund.x + d * y * fund.y, x * fund.y + y * fund.x
    return sorted(out)


def pell_grid_scan(d: int, N: int, B: int) -> list[tuple[int, int]]:
    """All |x|, |y| <= B with x^2 - d*y^2 = N, by exact square testing over y."""
    out = []
    for y in range(0, B + 1):
        rhs = N + d * y * y
        if rhs < 0:
            continue
        x = math.isqrt(rhs)
        if x * x != rhs or x > B:
            continue
        for sx in ((1, -1) if x else (1,)):
            for sy in ((1, -1) if y else (1,)):
                out.append((sx * x, sy * y))
    return sorted(out)


def brute_fundamental(d: int) -> tuple[int, int]:
    """Smallest y >= 1 with d*y^2 + 1 a perfect square (oracle)."""
    y = 1
    while True:
        r = d * y * y + 1
        x = math.isqrt(r)
        if x * x == r:
            return x, y
        y += 1


@dataclass(frozen=True)
class GrowthReport:
    d: int
    points: tuple[tuple[int, int], ...]  # (B, count)
    slope: float
    intercept: float
    max_residual: float
    envelope_intercept: float  # count <= slope*ln(B) + envelope_intercept on the grid
    monotone: bool
    max_jump: int

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "grid": [{"B": B, "count": c} for B, c in self.points],
            "fit": {"slope": self.slope, "intercept": self.intercept},
            "max_residual": self.max_residual,
            "envelope_intercept": self.envelope_intercept,
            "monotone": self.monotone,
            "max_jump": self.max_jump,
        }


def count_growth_check(d: int, B_grid) -> GrowthReport:
    grid = sorted(B_grid)
    counts = [len(solutions_up_to(d, B)) for B in grid]
    logs = [math.log(B) for B in grid]
    if len(grid) >= 2 and len(set(logs)) >= 2:
        slope, intercept = statistics.linear_regression(logs, counts)
    else:
        slope, intercept = 0.0, float(counts[0]) if counts else 0.0
    resid = [c - (slope * lg + intercept) for c, lg in zip(counts, logs)]
    max_res = max((abs(r) for r in resid), default=0.0)
    envelope = intercept + max((r for r in resid), default=0.0)
    jumps = [b - a for a, b in zip(counts, counts[1:])]
    return GrowthReport(
        d=d,
        points=tuple(zip(grid, counts)),
        slope=slope,
        intercept=intercept,
        max_residual=max_res,
        envelope_intercept=envelope,
        monotone=all(j >= 0 for j in jumps),
        max_jump=max(jumps, default=0),
    )


@dataclass(frozen=True)
class PellPoints:
    points: tuple[tuple[int, int], ...]
    target: Fraction
    non_integer_target: bool


def integral_points_pell_form(form: PellForm, k, B: int) -> PellPoints:
    """Integral points with |x|, |y| <= B on alpha*(x^2 - d*y^2) + beta = k."""
    N = (as_rat(k) - form.beta) / form.alpha
    if N.denominator != 1:
        return PellPoints((), N, True)
    n = int(N)
    if n == 1:
        pts = tuple((s.x, s.y) for s in solutions_up_to(form.d, B))
    else:
        pts = tuple(pell_grid_scan(form.d, n, B))
    return PellPoints(pts, N, False)
