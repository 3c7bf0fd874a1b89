"""Pluricanonical sections on the quadric cone u*v = w^2.

Ring elements on the cone are kept in the normal form c0(u,v) + c1(u,v)*w,
reducing every w^2 to u*v.  The cone is uniformized by the degree-2 chart
(s,t) -> (u,v,w) = (s^2, t^2, s*t); images of cone elements are exactly the
(s,t) -> (-s,-t)-invariant polynomials, i.e. those with every term of even
total degree.  Routing all computations through this chart turns each step
into a polynomial substitution with a checkable invariance, which is how
the sign conventions stay coherent.

The marked curve is (v = w = 0), the image of (t = 0); note that v itself
cuts the curve doubly while w cuts it once.  A section of even weight 2m is

    coeff * ((du^dw)/u)^{2m} * v^{-m},

and restricting it to the curve goes through the chart: the generator pulls
back to 2^{2m} * (ds^dt)^{2m} * t^{-2m} = 2^{2m} * ((ds^dt)/t)^{2m}, whose
residue along (t=0) is 2^{2m} (ds)^{2m}; rewriting on the curve coordinate
u = s^2 (du = 2s ds) gives u^{-m} (du)^{2m}.  With coefficient 1 the
restriction therefore carries a pole of order exactly m.  An independent
route through local coordinates (u, w) on the cone (v = w^2/u) must agree,
and both are implemented.

Finally, gluing a smooth chart to the cone along the curve caps the pole:
the smooth side only produces pole-free restrictions, so the exact
intersection of the two achievable restriction spaces allows no pole at
all, for every m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import LaurentPolynomial, NegativeExponentAtRestriction
from .logres import SMOOTH_PAIR, BranchRestriction, PluriSection, restrict

_UV = ("u", "v")
_ST = ("s", "t")


class IllegalPole(Exception):
    """The coefficient is too singular along the curve to restrict."""


class ConeElement:
    """c0 + c1*w in the coordinate ring of the cone, w^2 reduced to u*v."""

    __slots__ = ("_c0", "_c1")

    def __init__(self, c0: LaurentPolynomial, c1: LaurentPolynomial | None = None) -> None:
        if c1 is None:
            c1 = LaurentPolynomial.zero(_UV)
        if c0.variables != _UV or c1.variables != _UV:
            raise ValueError("cone elements live over the variables (u, v)")
        object.__setattr__(self, "_c0", c0)
        object.__setattr__(self, "_c1", c1)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("ConeElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ConeElement":
        return cls(LaurentPolynomial.zero(_UV))

    @classmethod
    def one(cls) -> "ConeElement":
        return cls(LaurentPolynomial.constant(_UV, 1))

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 0, coeff: Fraction | int = 1) -> "ConeElement":
        """u^a * v^b * w^c, reduced to normal form."""
        if min(a, b, c) < 0:
            raise ValueError("cone monomials have nonnegative exponents")
        k, r = divmod(c, 2)
        body = LaurentPolynomial.monomial(_UV, {"u": a + k, "v": b + k}, coeff)
        if r == 0:
            return cls(body)
        return cls(LaurentPolynomial.zero(_UV), body)

    # -- queries -----------------------------------------------------------

    @property
    def c0(self) -> LaurentPolynomial:
        return self._c0

    @property
    def c1(self) -> LaurentPolynomial:
        return self._c1

    @property
    def is_zero(self) -> bool:
        return self._c0.is_zero and self._c1.is_zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ConeElement") -> "ConeElement":
        return ConeElement(self._c0 + other._c0, self._c1 + other._c1)

    def __neg__(self) -> "ConeElement":
        return ConeElement(-self._c0, -self._c1)

    def __sub__(self, other: "ConeElement") -> "ConeElement":
        return self + (-other)

    def __mul__(self, other: "ConeElement") -> "ConeElement":
        uv = LaurentPolynomial.monomial(_UV, {"u": 1, "v": 1})
        c0 = self._c0 * other._c0 + uv * (self._c1 * other._c1)
        c1 = self._c0 * other._c1 + self._c1 * other._c0
        return ConeElement(c0, c1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeElement):
            return NotImplemented
        return self._c0 == other._c0 and self._c1 == other._c1

    def __hash__(self) -> int:
        return hash((self._c0, self._c1))

    def __str__(self) -> str:
        if self._c1.is_zero:
            return str(self._c0)
        if self._c0.is_zero:
            return f"({self._c1})*w"
        return f"{self._c0} + ({self._c1})*w"

    def __repr__(self) -> str:
        return f"ConeElement({self!s})"


@dataclass(frozen=True)
class ChartElement:
    """Image of a cone element in the double-cover chart (s,t)."""

    poly: LaurentPolynomial

    def __post_init__(self) -> None:
        if self.poly.variables != _ST:
            raise ValueError("chart elements live over the variables (s, t)")
        for exps in self.poly.terms():
            if sum(exps) % 2 != 0:
                raise ValueError(
                    f"term with exponents {exps} is not (-1,-1)-invariant"
                )


def to_chart(element: ConeElement) -> ChartElement:
    """Substitute u = s^2, v = t^2, w = s*t."""
    images = {"u": (1, {"s": 2}), "v": (1, {"t": 2})}
    part0 = element.c0.substitute_monomials(_ST, images)
    part1 = element.c1.substitute_monomials(_ST, images)
    st = LaurentPolynomial.monomial(_ST, {"s": 1, "t": 1})
    return ChartElement(part0 + part1 * st)


def mult_along_c2(element: ConeElement) -> int:
    """Order of vanishing along the curve (v = w = 0), computed in the chart."""
    if element.is_zero:
        raise ValueError("the zero element has no vanishing order")
    chart = to_chart(element).poly
    low = chart.low_degree_in("t")
    assert low is not None
    return low


@dataclass(frozen=True)
class ConeSection:
    """coeff * ((du^dw)/u)^weight * v^(-weight/2); the weight is even."""

    weight: int
    coeff: ConeElement

    def __post_init__(self) -> None:
        if self.weight < 0 or self.weight % 2 != 0:
            raise ValueError("cone sections carry even nonnegative weight")

    @property
    def half_weight(self) -> int:
        return self.weight // 2


def _even_substitute(poly_s: LaurentPolynomial, target: str) -> LaurentPolynomial:
    # rewrite s^(2k) -> target^k; all exponents must be even
    out = {}
    for exps, c in poly_s.terms().items():
        (e,) = exps
        if e % 2 != 0:
            raise ValueError(f"odd exponent {e} cannot descend to the curve")
        out[(e // 2,)] = c
    return LaurentPolynomial((target,), out)


def restrict_cone(section: ConeSection) -> BranchRestriction:
    """Restrict a cone section to the curve, through the double-cover chart.

    The generator contributes ((ds^dt)/t)^{2m} after pullback (the powers
    of 2 cancel against du = 2s ds), so the coefficient relative to the log
    frame is the chart image itself; it must be holomorphic across (t=0).
    """
    m = section.half_weight
    chart = to_chart(section.coeff).poly
    try:
        along = chart.restrict_var("t")
    except NegativeExponentAtRestriction as exc:
        raise IllegalPole(str(exc)) from exc
    # residue sign of ((ds^dt)/t)^{2m} is (-1)^{2m}: always +1 at even weight
    sign = (-1) ** section.weight
    h = _even_substitute(along, "u") * sign
    h = h * LaurentPolynomial.monomial(("u",), {"u": -m})
    return BranchRestriction("u", section.weight, h)


def restrict_cone_log_frame(section: ConeSection) -> BranchRestriction:
    """Independent route: local coordinates (u, w) on the cone, v = w^2/u.

    Rewriting the generator over the log frame ((du^dw)/w)^{2m} multiplies
    the coefficient by w^{2m} u^{-2m} v^{-m} = u^{-m}; the residue along
    (w=0) of that frame is (-du)^{2m}.
    """
    m = section.half_weight
    images = {"u": (1, {"u": 1}), "v": (1, {"u": -1, "w": 2})}
    uw_vars = ("u", "w")
    body = section.coeff.c0.substitute_monomials(uw_vars, images)
    w = LaurentPolynomial.monomial(uw_vars, {"w": 1})
    body = body + section.coeff.c1.substitute_monomials(uw_vars, images) * w
    body = body * LaurentPolynomial.monomial(uw_vars, {"u": -m})
    try:
        along = body.restrict_var("w")
    except NegativeExponentAtRestriction as exc:
        raise IllegalPole(str(exc)) from exc
    sign = (-1) ** section.weight
    return BranchRestriction("u", section.weight, along * sign)


def pole_bound_s2(m: int) -> int:
    """Largest pole order the cone side can produce at weight 2m.

    Scans monomial coefficients u^a v^b w^c; exponents above m cannot
    enlarge the pole, so the [0, m]^2 x {0, 1} box is exhaustive.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 0
    best = 0
    for a in range(m + 1):
        for b in range(m + 1):
            for c in (0, 1):
                section = ConeSection(2 * m, ConeElement.monomial(a, b, c))
                best = max(best, restrict_cone(section).pole_order)
    return best


def glued_pole_bound(m: int, degree_cutoff: int = 12) -> int:
    """Largest pole of a restriction achievable on BOTH sides of the gluing.

    The smooth chart (curve y=0) is glued to the cone curve by u = x.  Both
    restriction maps send monomial coefficients to monomials, so each
    achievable space is the span of the restricted monomials; the spaces
    are intersected exactly, over coefficients of total degree up to the
    cutoff.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    smooth_exps: set[int] = set()
    for a in range(degree_cutoff + 1):
        for b in range(degree_cutoff + 1 - a):
            coeff = LaurentPolynomial.monomial(("x", "y"), {"x": a, "y": b})
            r = restrict(PluriSection(SMOOTH_PAIR, 2 * m, coeff), "y")
            for exps in r.h.terms():
                smooth_exps.add(exps[0])
    cone_exps: set[int] = set()
    for a in range(degree_cutoff + 1):
        for b in range(degree_cutoff + 1 - a):
            for c in (0, 1):
                if a + b + c > degree_cutoff:
                    continue
                r = restrict_cone(ConeSection(2 * m, ConeElement.monomial(a, b, c)))
                for exps in r.h.terms():
                    cone_exps.add(exps[0])
    common = smooth_exps & cone_exps
    return max((max(0, -e) for e in common), default=0)
