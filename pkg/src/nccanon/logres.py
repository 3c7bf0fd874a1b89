"""Log pluricanonical sections on plane charts and their gluing.

Each chart model carries a fixed generator of the m-th power of the log
canonical bundle along its marked curve:

  nc pair        chart (x,y), curve x*y=0,  generator (dx^dy)/(x*y)
  smooth pair    chart (x,y), curve y=0,    generator (dx^dy)/y
  half plane U   chart (u1,v1), curve u1=0, generator (du1^dv1)/u1
  half plane V   chart (u2,v2), curve v2=0, generator (du2^dv2)/v2

A weight-m section is coeff * generator^m.  Restricting a section to a
branch of the curve uses the residue rule (df/f)^dg |-> dg on (f=0); the
resulting one-variable object is always normalized to the presentation
h(t)*(dt)^m, with all residue signs and dt/t factors folded into h.  On the
nc pair the curve generator eta restricts to -dx/x on (y=0) and to dy/y on
(x=0); the smooth pair restricts to dx, the half planes to dv1 and -du2.

The half planes are glued to the two branches of the nc curve by the map
sigma which identifies v1 = y and u2 = x, away from the origin.  Pulling a
half-plane restriction back through sigma re-expresses it over the nc
branch; a triple of sections glues iff the nc restrictions equal (-1)^m
times the pulled-back half-plane restrictions on both branches.  The set of
nc coefficients admitting holomorphic half-plane partners at weight m is a
monomial ideal, computed here from the branch conditions themselves.

A separate concern of the same local model: the glued surface has a triple
point of embedding dimension 4.  ``embed_check`` decides whether a signed
placement of the three chart planes onto coordinate 2-planes of C^4 is
consistent with the gluing, and ``embed_search`` scans all placements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactalg import LaurentPolynomial
from .monideal import MonomialIdeal


class UnknownBranch(Exception):
    """The requested branch is not part of the chart's marked curve."""


class EmbeddingNotFound(Exception):
    """No signed coordinate placement satisfies the consistency checks."""


@dataclass(frozen=True)
class BranchRule:
    """Restriction data for one branch of a chart's marked curve.

    The chart generator restricts on (zero_var = 0) to
    residue_sign * d(param_var) / param_var   if log_pole else
    residue_sign * d(param_var).
    """

    zero_var: str
    param_var: str
    residue_sign: int
    log_pole: bool


@dataclass(frozen=True)
class ChartModel:
    name: str
    variables: tuple[str, str]
    curve: str
    branches: tuple[BranchRule, ...]

    def branch(self, zero_var: str) -> BranchRule:
        for rule in self.branches:
            if rule.zero_var == zero_var:
                return rule
        raise UnknownBranch(
            f"chart {self.name} has no branch ({zero_var}=0); curve is {self.curve}"
        )


NC_PAIR = ChartModel(
    "nc-pair",
    ("x", "y"),
    "x*y=0",
    (
        BranchRule("x", "y", +1, True),
        BranchRule("y", "x", -1, True),
    ),
)

SMOOTH_PAIR = ChartModel(
    "smooth-pair",
    ("x", "y"),
    "y=0",
    (BranchRule("y", "x", +1, False),),
)

HALF_PLANE_U = ChartModel(
    "half-plane-u",
    ("u1", "v1"),
    "u1=0",
    (BranchRule("u1", "v1", +1, False),),
)

HALF_PLANE_V = ChartModel(
    "half-plane-v",
    ("u2", "v2"),
    "v2=0",
    (BranchRule("v2", "u2", -1, False),),
)


@dataclass(frozen=True)
class PluriSection:
    """coeff * (chart generator)^weight on a chart model."""

    model: ChartModel
    weight: int
    coeff: LaurentPolynomial
    meromorphic: bool = False

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")
        if self.coeff.variables != self.model.variables:
            raise ValueError(
                f"coefficient variables {self.coeff.variables} do not match "
                f"chart {self.model.name} {self.model.variables}"
            )
        if not self.meromorphic and not self.coeff.is_polynomial():
            raise ValueError(
                "coefficient has negative exponents; pass meromorphic=True"
            )

    def __mul__(self, other: "PluriSection") -> "PluriSection":
        if self.model is not other.model:
            raise ValueError("sections live on different charts")
        return PluriSection(
            self.model,
            self.weight + other.weight,
            self.coeff * other.coeff,
            self.meromorphic or other.meromorphic,
        )


@dataclass(frozen=True)
class BranchRestriction:
    """A restricted section in normalized presentation h(t)*(dt)^weight."""

    curve_var: str
    weight: int
    h: LaurentPolynomial

    def __post_init__(self) -> None:
        if self.h.variables != (self.curve_var,):
            raise ValueError(
                f"h must be univariate in {self.curve_var!r}, got {self.h.variables}"
            )

    @property
    def pole_order(self) -> int:
        low = self.h.low_degree_in(self.curve_var)
        return 0 if low is None else max(0, -low)

    def scaled(self, factor: int | Fraction) -> "BranchRestriction":
        return BranchRestriction(self.curve_var, self.weight, self.h * factor)

    def __mul__(self, other: "BranchRestriction") -> "BranchRestriction":
        if self.curve_var != other.curve_var:
            raise ValueError("restrictions live on different branches")
        return BranchRestriction(
            self.curve_var, self.weight + other.weight, self.h * other.h
        )

    def __str__(self) -> str:
        return f"({self.h})*(d{self.curve_var})^{self.weight} pole={self.pole_order}"


def _fold_log_frame(
    coeff: LaurentPolynomial, rule: BranchRule, weight: int
) -> BranchRestriction:
    # coeff is relative to (generator restriction)^weight; normalize to (dt)^m
    t = rule.param_var
    h = coeff * (rule.residue_sign ** weight)
    if rule.log_pole:
        h = h * LaurentPolynomial.monomial((t,), {t: -weight})
    return BranchRestriction(t, weight, h)


def restrict(section: PluriSection, branch: str) -> BranchRestriction:
    """Restrict a section to one branch of its chart's marked curve.

    The coefficient must be holomorphic transverse to the branch;
    otherwise NegativeExponentAtRestriction propagates from the
    substitution.
    """
    rule = section.model.branch(branch)
    restricted = section.coeff.restrict_var(rule.zero_var)
    return _fold_log_frame(restricted, rule, section.weight)


@dataclass(frozen=True)
class BranchMatch:
    """One leg of the gluing: an nc branch identified with a half-plane curve."""

    nc_zero_var: str
    nc_param: str
    half_plane: ChartModel
    half_zero_var: str
    half_param: str


# the gluing, defined away from the origin: branch (x=0) of the nc curve is
# the half-plane curve (u1=0) with v1 = y, branch (y=0) is (v2=0) with u2 = x
SIGMA = (
    BranchMatch("x", "y", HALF_PLANE_U, "u1", "v1"),
    BranchMatch("y", "x", HALF_PLANE_V, "v2", "u2"),
)


def pullback_sigma(restriction: BranchRestriction) -> BranchRestriction:
    """Rewrite a half-plane branch restriction over the matched nc branch.

    With t the half-plane parameter and s the matched nc parameter, the
    identification t = s gives (dt)^m = (sign*s*eta)^m relative to the nc
    curve generator eta on that branch; folding eta back into the (ds)^m
    presentation cancels the factor exactly, which is the content of the
    pullback formulas (dv1)^m -> y^m*eta^m and (du2)^m -> (-x)^m*eta^m.
    """
    match = next(
        (leg for leg in SIGMA if leg.half_param == restriction.curve_var), None
    )
    if match is None:
        raise UnknownBranch(
            f"no gluing is defined on branch parameter {restriction.curve_var!r}"
        )
    nc_param = match.nc_param
    rule = NC_PAIR.branch(match.nc_zero_var)
    m = restriction.weight
    h = restriction.h.rename({restriction.curve_var: nc_param})
    # (dt)^m = (sign * s)^m * eta^m: coefficient relative to the log frame
    factor = LaurentPolynomial.monomial(
        (nc_param,), {nc_param: m}, Fraction(rule.residue_sign) ** m
    )
    return _fold_log_frame(h * factor, rule, m)


def glues(
    section_nc: PluriSection,
    section_u: PluriSection,
    section_v: PluriSection,
) -> bool:
    """Decide the gluing condition for a triple of equal-weight sections.

    True iff on both nc branches the restriction equals (-1)^m times the
    pullback of the matched half-plane restriction, as an exact identity of
    normalized presentations.
    """
    if section_nc.model is not NC_PAIR:
        raise ValueError("first section must live on the nc pair")
    if section_u.model is not HALF_PLANE_U or section_v.model is not HALF_PLANE_V:
        raise ValueError("partner sections must live on the half planes")
    m = section_nc.weight
    if section_u.weight != m or section_v.weight != m:
        raise ValueError("sections must have equal weights")
    sign = (-1) ** m
    on_x = restrict(section_nc, "x")
    on_y = restrict(section_nc, "y")
    from_u = pullback_sigma(restrict(section_u, "u1")).scaled(sign)
    from_v = pullback_sigma(restrict(section_v, "v2")).scaled(sign)
    return on_x == from_u and on_y == from_v


def partner_sections(
    section_nc: PluriSection,
) -> tuple[PluriSection, PluriSection] | None:
    """Construct half-plane sections gluing with the given nc section.

    The branch restrictions force the partners' restrictions; a partner
    exists iff the forced restriction is a polynomial.  Returns None when
    no holomorphic partners exist.
    """
    m = section_nc.weight
    leg_u, leg_v = SIGMA
    on_x = restrict(section_nc, leg_u.nc_zero_var)
    on_y = restrict(section_nc, leg_v.nc_zero_var)
    # the U partner absorbs the (-1)^m twist; on the other branch the twist
    # cancels against the residue sign of the V generator
    h_u = on_x.h * ((-1) ** m)
    h_v = on_y.h
    if not (h_u.is_polynomial() and h_v.is_polynomial()):
        return None
    coeff_u = h_u.rename({leg_u.nc_param: leg_u.half_param}).with_variables(
        leg_u.half_plane.variables
    )
    coeff_v = h_v.rename({leg_v.nc_param: leg_v.half_param}).with_variables(
        leg_v.half_plane.variables
    )
    return (
        PluriSection(leg_u.half_plane, m, coeff_u),
        PluriSection(leg_v.half_plane, m, coeff_v),
    )


def gluing_ideal(m: int) -> MonomialIdeal:
    """Coefficients on the nc pair admitting half-plane partners at weight m.

    Computed from the branch conditions: a monomial coefficient qualifies
    iff both forced partner restrictions are polynomials.  Monomials with
    an exponent above m are divisible by a qualifying monomial capped at m,
    so scanning the [0, m]^2 box finds all minimal generators.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    hits = []
    for a in range(m + 1):
        for b in range(m + 1):
            coeff = LaurentPolynomial.monomial(("x", "y"), {"x": a, "y": b})
            section = PluriSection(NC_PAIR, m, coeff)
            if partner_sections(section) is not None:
                hits.append((a, b))
    return MonomialIdeal(("x", "y"), hits)


# ---------------------------------------------------------------------------
# embedding of the glued triple point into C^4
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneEmbedding:
    """A signed placement of a chart's two variables onto axes of C^4."""

    axes: tuple[int, int]
    signs: tuple[int, int]

    def __post_init__(self) -> None:
        if not all(0 <= a <= 3 for a in self.axes):
            raise ValueError("axes must lie in 0..3")
        if not all(s in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def spanned(self) -> frozenset[int]:
        return frozenset(self.axes)

    def param_image(self, var_index: int) -> tuple[int, int, int, int]:
        """Linear coefficients of the image when only this variable varies."""
        vec = [0, 0, 0, 0]
        vec[self.axes[var_index]] = self.signs[var_index]
        return tuple(vec)

    def map_str(self, variables: tuple[str, str]) -> str:
        slots = ["0"] * 4
        for i, v in enumerate(variables):
            slots[self.axes[i]] = v if self.signs[i] == 1 else f"-{v}"
        return f"({variables[0]},{variables[1]})->({','.join(slots)})"


@dataclass(frozen=True)
class EmbeddingAssignment:
    """Placements for the nc chart and the two half planes."""

    nc: PlaneEmbedding
    half_u: PlaneEmbedding
    half_v: PlaneEmbedding

    def placement(self, model: ChartModel) -> PlaneEmbedding:
        if model is NC_PAIR:
            return self.nc
        if model is HALF_PLANE_U:
            return self.half_u
        if model is HALF_PLANE_V:
            return self.half_v
        raise ValueError(f"chart {model.name} is not part of the assignment")

    def __str__(self) -> str:
        return "; ".join(
            (
                self.nc.map_str(NC_PAIR.variables),
                self.half_u.map_str(HALF_PLANE_U.variables),
                self.half_v.map_str(HALF_PLANE_V.variables),
            )
        )


# hand-written assignment (x,y)->(0,x,y,0), (u1,v1)->(v1,u1,0,0),
# (u2,v2)->(0,0,v2,u2); kept as a named input for the consistency check
ASSIGNMENT_0XY0 = EmbeddingAssignment(
    nc=PlaneEmbedding((1, 2), (1, 1)),
    half_u=PlaneEmbedding((1, 0), (1, 1)),
    half_v=PlaneEmbedding((3, 2), (1, 1)),
)

# chain of three coordinate 2-planes (t1=t2=0), (t2=t3=0), (t3=t4=0),
# written as the axis sets they span
CHAIN_PLANES = (frozenset({2, 3}), frozenset({0, 3}), frozenset({0, 1}))


def embed_check(assignment: EmbeddingAssignment) -> bool:
    """Consistency of a placement with the chart gluing.

    (i) each image spans a genuine coordinate 2-plane, (ii) the three
    image planes are pairwise distinct, and (iii) points identified by the
    gluing (v1 = y on one branch, u2 = x on the other) have equal images.
    """
    planes = (assignment.nc, assignment.half_u, assignment.half_v)
    if any(p.axes[0] == p.axes[1] for p in planes):
        return False
    spans = [p.spanned() for p in planes]
    if len(set(spans)) != 3:
        return False
    for leg in SIGMA:
        nc_image = assignment.nc.param_image(NC_PAIR.variables.index(leg.nc_param))
        half = assignment.placement(leg.half_plane)
        half_image = half.param_image(leg.half_plane.variables.index(leg.half_param))
        if nc_image != half_image:
            return False
    return True


def _candidates(
    allowed_planes: Sequence[frozenset[int]] | None,
) -> list[PlaneEmbedding]:
    out = []
    for a0 in range(4):
        for a1 in range(4):
            if a0 == a1:
                continue
            if allowed_planes is not None and frozenset((a0, a1)) not in set(
                allowed_planes
            ):
                continue
            for s0 in (1, -1):
                for s1 in (1, -1):
                    out.append(PlaneEmbedding((a0, a1), (s0, s1)))
    return out


def embed_search(
    allowed_planes: Iterable[frozenset[int]] | None = None,
) -> EmbeddingAssignment:
    """First placement (in a fixed deterministic order) passing embed_check.

    ``allowed_planes`` optionally restricts every chart image to the given
    coordinate 2-planes (axis sets).  Raises EmbeddingNotFound when the
    search space is exhausted.
    """
    allowed = None if allowed_planes is None else list(allowed_planes)
    pool = _candidates(allowed)
    for nc in pool:
        for half_u in pool:
            # prune on the first branch identity before the inner loop
            if nc.param_image(1) != half_u.param_image(1):
                continue
            if nc.spanned() == half_u.spanned():
                continue
            for half_v in pool:
                assignment = EmbeddingAssignment(nc, half_u, half_v)
                if embed_check(assignment):
                    return assignment
    raise EmbeddingNotFound("no consistent signed placement exists")
