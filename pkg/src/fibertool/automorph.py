"""Elementary plane automorphisms kept as lazy step sequences.

A :class:`PlaneAutomorphism` applies its steps left to right to points, so
``Phi = steps[-1] o ... o steps[0]`` as a map and ``P o Phi`` substitutes the
last step first. Inversion reverses the list and inverts every step in closed
form; nothing is ever eagerly composed into a raw polynomial pair except by
:func:`coordinates`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError
from .poly import BiPoly, UniPoly, as_rat, is_integral, substitute_bi


@dataclass(frozen=True)
class Triangular:
    """(x, y) -> (lam*x, mu*y + s(x))."""

    lam: Fraction
    mu: Fraction
    s: UniPoly

    def __post_init__(self):
        object.__setattr__(self, "lam", as_rat(self.lam))
        object.__setattr__(self, "mu", as_rat(self.mu))
        if not self.lam or not self.mu:
            raise ValueError("triangular map needs nonzero lambda and mu")

    def apply(self, pt):
        x, y = pt
        return self.lam * x, self.mu * y + self.s(x)

    def inverse(self) -> Triangular:
        li, mi = 1 / self.lam, 1 / self.mu
        return Triangular(li, mi, self.s.scale_arg(li) * (-mi))

    def pull_back(self, P: BiPoly) -> BiPoly:
        u = BiPoly({(1, 0): self.lam})
        v = BiPoly({(0, 1): self.mu}) + BiPoly.from_uni(self.s, "x")
        return substitute_bi(P, u, v)

    def jacobian(self) -> Fraction:
        return self.lam * self.mu

    def to_json(self) -> dict:
        return {"kind": "triangular", "lambda": str(self.lam), "mu": str(self.mu),
                "s": self.s.to_str("x")}


@dataclass(frozen=True)
class Swap:
    """(x, y) -> (y, x)."""

    def apply(self, pt):
        x, y = pt
        return y, x

    def inverse(self) -> Swap:
        return self

    def pull_back(self, P: BiPoly) -> BiPoly:
        return P.swap_xy()

    def jacobian(self) -> Fraction:
        return Fraction(-1)

    def to_json(self) -> dict:
        return {"kind": "swap"}


@dataclass(frozen=True)
class Shift:
    """(x, y) -> (x + c, y + e)."""

    c: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rat(self.c))
        object.__setattr__(self, "e", as_rat(self.e))

    def apply(self, pt):
        x, y = pt
        return x + self.c, y + self.e

    def inverse(self) -> Shift:
        return Shift(-self.c, -self.e)

    def pull_back(self, P: BiPoly) -> BiPoly:
        return substitute_bi(P, BiPoly.x() + self.c, BiPoly.y() + self.e)

    def jacobian(self) -> Fraction:
        return Fraction(1)

    def to_json(self) -> dict:
        return {"kind": "shift", "c": str(self.c), "e": str(self.e)}


ElementaryMap = Union[Triangular, Swap, Shift]


@dataclass(frozen=True)
class PlaneAutomorphism:
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def then(self, other: PlaneAutomorphism) -> PlaneAutomorphism:
        """The map applying ``self`` first, then ``other``."""
        return PlaneAutomorphism(self.steps + other.steps)

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, data: dict) -> PlaneAutomorphism:
        steps = []
        for raw in data.get("steps", []):
            kind = raw.get("kind")
            if kind == "triangular":
                steps.append(Triangular(as_rat(raw["lambda"]), as_rat(raw["mu"]),
                                        UniPoly.parse(raw.get("s", "0"), "x")))
            elif kind == "swap":
                steps.append(Swap())
            elif kind == "shift":
                steps.append(Shift(as_rat(raw["c"]), as_rat(raw["e"])))
            else:
                raise ParseError(f"unknown step kind {kind!r}")
        return cls(tuple(steps))


IDENTITY = PlaneAutomorphism()


def apply_point(phi: PlaneAutomorphism, pt):
    """Image of ``pt`` under phi; coordinates may be numbers or polynomials."""
    x, y = pt
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(y, int):
        y = Fraction(y)
    for step in phi.steps:
        x, y = step.apply((x, y))
    return x, y


def apply_poly(P: BiPoly, phi: PlaneAutomorphism) -> BiPoly:
    """P o phi."""
    for step in reversed(phi.steps):
        P = step.pull_back(P)
    return P


def invert(phi: PlaneAutomorphism) -> PlaneAutomorphism:
    return PlaneAutomorphism(tuple(s.inverse() for s in reversed(phi.steps)))


def coordinates(phi: PlaneAutomorphism) -> tuple[BiPoly, BiPoly]:
    """The two coordinate polynomials of the fully composed map."""
    return apply_point(phi, (BiPoly.x(), BiPoly.y()))


def has_integral_inverse(phi: PlaneAutomorphism) -> bool:
    X, Y = coordinates(invert(phi))
    return all(is_integral(c) for P in (X, Y) for c in P.terms.values())


def jacobian_det(phi: PlaneAutomorphism) -> Fraction:
    det = Fraction(1)
    for step in phi.steps:
        det *= step.jacobian()
    return det


def simplify(phi: PlaneAutomorphism) -> PlaneAutomorphism:
    """Drop adjacent Swap pairs and identity steps."""
    out = []
    for step in phi.steps:
        if isinstance(step, Shift) and not step.c and not step.e:
            continue
        if isinstance(step, Triangular) and step.lam == 1 and step.mu == 1 and step.s.is_zero():
            continue
        if isinstance(step, Swap) and out and isinstance(out[-1], Swap):
            out.pop()
            continue
        out.append(step)
    return PlaneAutomorphism(tuple(out))
