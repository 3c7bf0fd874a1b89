"""Desk-scale global checks: curves, lattices, and binary forms.

Three independent toolkits live here, all over exact rationals.

Elliptic curves y^2 = x^3 + a*x + b carry the chord-tangent group law;
linear equivalence of two degree-2 point pairs is decided by comparing
group sums (the degree-0 classes agree iff the sums do).

An intersection lattice is a free Z-module with named basis classes, a
symmetric pairing, and a distinguished canonical class K.  Blowing up a
point extends the basis by an exceptional class E with E.E = -1 orthogonal
to pulled-back classes, replaces the listed curve classes by their strict
transforms D - mult*E, and moves K to K + E.  Fiber relations such as
F.F = 0 and K.F from adjunction are supplied as inputs: only the
bookkeeping is mechanized, not the existence of the surface.

Binary forms f(x,y) stand in for double covers z^2 = f: the branch points
are the projective roots of f, counted via a squarefreeness check (gcd of
the dehomogenization with its derivative, plus the multiplicity of the
root at infinity).  Shared roots of two forms are detected the same way,
which decides both "the involution moves every node off itself" and
base-point-freeness of a pair of forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .exactalg import LaurentPolynomial


class NotSquarefree(Exception):
    """The branch form has a repeated projective root."""


# ---------------------------------------------------------------------------
# elliptic curves
# ---------------------------------------------------------------------------


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ECCurve:
    """Nonsingular Weierstrass curve y^2 = x^3 + a*x + b over the rationals."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ValueError("curve is singular: 4a^3 + 27b^2 = 0")

    def contains(self, x: Fraction, y: Fraction) -> bool:
        return y * y == x**3 + self.a * x + self.b

    def point(self, x: Fraction | int, y: Fraction | int) -> "ECPoint":
        x, y = Fraction(x), Fraction(y)
        if not self.contains(x, y):
            raise ValueError(f"({x}, {y}) is not on y^2 = x^3 + {self.a}x + {self.b}")
        return ECPoint(x, y)

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({self.a})*x + ({self.b})"


@dataclass(frozen=True)
class ECPoint:
    """An affine point or the point at infinity (x = y = None)."""

    x: Fraction | None
    y: Fraction | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "inf" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = ECPoint(None, None)


def ec_neg(p: ECPoint) -> ECPoint:
    if p.is_infinity:
        return p
    return ECPoint(p.x, -p.y)


def ec_add(curve: ECCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    """Chord-tangent group sum; infinity is the identity."""
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x and p.y == -q.y:
        return INFINITY
    if p == q:
        slope = (3 * p.x * p.x + curve.a) / (2 * p.y)
    else:
        if p.x == q.x:
            return INFINITY
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return ECPoint(x3, y3)


def ec_mul(curve: ECCurve, n: int, p: ECPoint) -> ECPoint:
    if n < 0:
        return ec_mul(curve, -n, ec_neg(p))
    acc = INFINITY
    step = p
    while n:
        if n & 1:
            acc = ec_add(curve, acc, step)
        n >>= 1
        if n:
            step = ec_add(curve, step, step)
    return acc


def linear_equiv(
    curve: ECCurve, p1: ECPoint, p2: ECPoint, q1: ECPoint, q2: ECPoint
) -> bool:
    """Whether p1 + p2 and q1 + q2 are linearly equivalent divisors."""
    return ec_add(curve, p1, p2) == ec_add(curve, q1, q2)


def points_with_x_in(curve: ECCurve, xs: Iterable[Fraction | int]) -> list[ECPoint]:
    """All affine rational points over the given x-coordinates."""
    found = []
    for x in xs:
        x = Fraction(x)
        y = rational_sqrt(x**3 + curve.a * x + curve.b)
        if y is None:
            continue
        found.append(ECPoint(x, y))
        if y != 0:
            found.append(ECPoint(x, -y))
    return found


# ---------------------------------------------------------------------------
# intersection lattices and blow-ups
# ---------------------------------------------------------------------------


class IntersectionLattice:
    """Named divisor classes with a symmetric integer pairing and a class K."""

    def __init__(
        self,
        basis: Sequence[str],
        pairing: Sequence[Sequence[int]],
        classes: Mapping[str, Sequence[int]] | None = None,
        canonical: str = "K",
    ) -> None:
        self.basis = tuple(basis)
        n = len(self.basis)
        self.matrix = tuple(tuple(int(x) for x in row) for row in pairing)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("pairing matrix must be square over the basis")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("pairing matrix must be symmetric")
        if classes is None:
            classes = {
                name: tuple(1 if k == i else 0 for k in range(n))
                for i, name in enumerate(self.basis)
            }
        self.classes = {
            name: tuple(int(c) for c in vec) for name, vec in classes.items()
        }
        for name, vec in self.classes.items():
            if len(vec) != n:
                raise ValueError(f"class {name!r} has wrong length")
        if canonical not in self.classes:
            raise ValueError(f"canonical class {canonical!r} is not defined")
        self.canonical = canonical

    def class_vector(self, name: str) -> tuple[int, ...]:
        return self.classes[name]

    def pair(self, left: str | Sequence[int], right: str | Sequence[int]) -> int:
        lv = self.classes[left] if isinstance(left, str) else tuple(left)
        rv = self.classes[right] if isinstance(right, str) else tuple(right)
        return sum(
            lv[i] * self.matrix[i][j] * rv[j]
            for i in range(len(self.basis))
            for j in range(len(self.basis))
        )

    def blowup(
        self, center_incidences: Mapping[str, int], exceptional: str
    ) -> "IntersectionLattice":
        """Blow up a point lying on the listed classes with given multiplicities.

        Listed classes become strict transforms D - mult*E; the canonical
        class becomes K + E; everything else is pulled back unchanged.
        """
        if exceptional in self.basis or exceptional in self.classes:
            raise ValueError(f"name {exceptional!r} is already in use")
        for name, mult in center_incidences.items():
            if name not in self.classes:
                raise ValueError(f"unknown class {name!r}")
            if name == self.canonical:
                raise ValueError("the canonical class is not a blow-up center datum")
            if mult < 0:
                raise ValueError("multiplicities must be >= 0")
        n = len(self.basis)
        new_basis = self.basis + (exceptional,)
        new_matrix = [
            [self.matrix[i][j] for j in range(n)] + [0] for i in range(n)
        ]
        new_matrix.append([0] * n + [-1])
        new_classes: dict[str, tuple[int, ...]] = {}
        for name, vec in self.classes.items():
            ext = vec + (0,)
            if name == self.canonical:
                ext = vec + (1,)
            elif name in center_incidences:
                ext = vec + (-center_incidences[name],)
            new_classes[name] = ext
        new_classes[exceptional] = (0,) * n + (1,)
        return IntersectionLattice(new_basis, new_matrix, new_classes, self.canonical)


def blowup(
    lattice: IntersectionLattice,
    center_incidences: Mapping[str, int],
    exceptional: str,
) -> IntersectionLattice:
    return lattice.blowup(center_incidences, exceptional)


def nc_pullback_degree(
    lattice: IntersectionLattice, boundary: Iterable[str], target: str
) -> int:
    """(K + sum of boundary classes) . target"""
    vec = list(lattice.class_vector(lattice.canonical))
    for name in boundary:
        bv = lattice.class_vector(name)
        vec = [a + b for a, b in zip(vec, bv)]
    return lattice.pair(vec, target)


def genus2_pencil_lattice(k_self: int = 0) -> IntersectionLattice:
    """Two nodal fibers of a fibration with K.F = 2, four points blown up.

    K.K is not used by any degree computed here and defaults to 0.  The
    four exceptional classes Eq1, Eq2 (centers on Fp) and Ep1, Ep2
    (centers on Fq) are appended in that order.
    """
    lattice = IntersectionLattice(
        ("K", "Fp", "Fq"),
        (
            (k_self, 2, 2),
            (2, 0, 0),
            (2, 0, 0),
        ),
    )
    lattice = lattice.blowup({"Fp": 1}, "Eq1")
    lattice = lattice.blowup({"Fp": 1}, "Eq2")
    lattice = lattice.blowup({"Fq": 1}, "Ep1")
    lattice = lattice.blowup({"Fq": 1}, "Ep2")
    return lattice


# ---------------------------------------------------------------------------
# binary forms and double covers
# ---------------------------------------------------------------------------


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_divmod(
    num: tuple[Fraction, ...], den: tuple[Fraction, ...]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(num)
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        factor = rem[k + len(den) - 1] / lead
        quot[k] = factor
        for i, d in enumerate(den):
            rem[k + i] -= factor * d
    return _trim(quot), _trim(rem)


def poly_gcd(
    p: Sequence[Fraction | int], q: Sequence[Fraction | int]
) -> tuple[Fraction, ...]:
    """Monic gcd of two univariate polynomials over the rationals.

    Coefficient sequences are low-to-high; the zero polynomial is ().
    """
    a = _trim([Fraction(c) for c in p])
    b = _trim([Fraction(c) for c in q])
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def _derivative(p: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return _trim([i * c for i, c in enumerate(p)][1:])


@dataclass(frozen=True)
class WeightedHyperellipticCurve:
    """Double cover z^2 = f(x,y) of the projective line, f of even degree.

    ``coeffs[i]`` is the coefficient of x^(d-i) * y^i.  The genus is
    (deg f - 2)/2 once f is squarefree.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) < 3 or (len(self.coeffs) - 1) % 2 != 0:
            raise ValueError("branch form must have even degree >= 2")
        if all(c == 0 for c in self.coeffs):
            raise ValueError("branch form must be nonzero")

    @classmethod
    def from_branch_poly(cls, poly: LaurentPolynomial) -> "WeightedHyperellipticCurve":
        """Build from a homogeneous polynomial in two variables."""
        if len(poly.variables) != 2:
            raise ValueError("branch form needs exactly two variables")
        terms = poly.terms()
        if not terms:
            raise ValueError("branch form must be nonzero")
        degrees = {sum(e) for e in terms}
        if len(degrees) != 1:
            raise ValueError("branch form must be homogeneous")
        d = degrees.pop()
        coeffs = [Fraction(0)] * (d + 1)
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError("branch form must be a polynomial")
            coeffs[j] = c
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def genus(self) -> int:
        return (self.degree - 2) // 2

    def dehomogenized(self) -> tuple[Fraction, ...]:
        """f(t, 1) with coefficients low-to-high in t."""
        return _trim(tuple(reversed(self.coeffs)))

    def infinity_multiplicity(self) -> int:
        """Multiplicity of (1:0) as a root of f, i.e. the power of y dividing f."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise AssertionError("zero form")

    def is_squarefree(self) -> bool:
        if self.infinity_multiplicity() > 1:
            return False
        p = self.dehomogenized()
        g = poly_gcd(p, _derivative(p))
        return len(g) <= 1

    def swapped(self) -> "WeightedHyperellipticCurve":
        """The image under the coordinate swap (x:y) -> (y:x)."""
        return WeightedHyperellipticCurve(tuple(reversed(self.coeffs)))


def fixed_points(curve: WeightedHyperellipticCurve) -> int:
    """Number of fixed points of the cover involution = distinct roots of f."""
    if not curve.is_squarefree():
        raise NotSquarefree(f"branch form {curve.coeffs} has a repeated root")
    return curve.degree


def node_count(
    curve_c: WeightedHyperellipticCurve, curve_e: WeightedHyperellipticCurve
) -> int:
    """A1 points of the diagonal involution quotient of the product."""
    return fixed_points(curve_c) * fixed_points(curve_e)


def binary_forms_share_root(
    f: Sequence[Fraction | int], g: Sequence[Fraction | int]
) -> bool:
    """Whether two binary forms (coefficient lists, x-degree descending)
    have a common projective root."""
    fc = tuple(Fraction(c) for c in f)
    gc = tuple(Fraction(c) for c in g)
    if all(c == 0 for c in fc) or all(c == 0 for c in gc):
        raise ValueError("forms must be nonzero")
    p = _trim(tuple(reversed(fc)))
    q = _trim(tuple(reversed(gc)))
    if len(poly_gcd(p, q)) > 1:
        return True
    # (1:0) is a common root iff both leading x-coefficients vanish
    return fc[0] == 0 and gc[0] == 0


def sigma_node_disjoint(curve: WeightedHyperellipticCurve) -> bool:
    """Whether the swap (x:y) -> (y:x) moves every root of f off the roots.

    Decided exactly: the roots of f and of the swapped form are disjoint
    iff their gcd is constant and they do not share the root at infinity.
    """
    if not curve.is_squarefree():
        raise NotSquarefree(f"branch form {curve.coeffs} has a repeated root")
    return not binary_forms_share_root(curve.coeffs, curve.swapped().coeffs)


# ---------------------------------------------------------------------------
# ampleness on a product and sections on the line
# ---------------------------------------------------------------------------


def product_ample(bidegree: tuple[int, int]) -> bool:
    """Ampleness of a class on a product of two curves, by factor degrees."""
    d1, d2 = bidegree
    return d1 > 0 and d2 > 0


def h0_p1(d: int) -> int:
    """Dimension of the space of degree-d forms on the projective line."""
    return max(d + 1, 0)


def product_canonical_bidegree(
    genus_first: int, genus_second: int, glued_points: int = 2
) -> tuple[int, int]:
    """Bidegree of the canonical class twisted by the glued fibers.

    On a product of curves of the given genera with ``glued_points``
    horizontal fibers added, the restriction to the factors has degrees
    (2g1 - 2, 2g2 - 2 + glued_points).
    """
    return (2 * genus_first - 2, 2 * genus_second - 2 + glued_points)
