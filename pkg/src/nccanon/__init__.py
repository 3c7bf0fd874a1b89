"""Exact verification toolkit for pluricanonical computations on
normal crossing surfaces.

The library mechanizes two local computations and their desk-scale global
consequences: the gluing condition for log pluricanonical sections on a
pair of planes meeting a half-plane chain (whose coefficient ideals
(x*y, x^m, y^m) force a fresh generator in every weight), and the
restriction of even-weight sections on the quadric cone u*v = w^2 (where a
pole of order m is possible locally but dies after gluing to a smooth
chart).  Supporting modules provide exact Laurent-polynomial arithmetic,
monomial-ideal bookkeeping, elliptic-curve divisor checks, blow-up
intersection lattices, and branch-form root counts.
"""

from .exactalg import (
    AffineExponent,
    ExactAlgError,
    LaurentPolynomial,
    NegativeExponentAtRestriction,
    ParseError,
    Rational,
    UnknownVariable,
    VariableMismatch,
    divides,
    parse_polynomial,
)
from .monideal import (
    GradedMonomialFamily,
    MonomialIdeal,
    MultiplicativityViolation,
    ReesGenerationReport,
    brute_force_new_generators,
    check_multiplicative,
    minimalize,
    new_generators,
    rees_report,
    subalgebra_component,
)
from .logres import (
    ASSIGNMENT_0XY0,
    BranchMatch,
    BranchRestriction,
    BranchRule,
    CHAIN_PLANES,
    ChartModel,
    EmbeddingAssignment,
    EmbeddingNotFound,
    HALF_PLANE_U,
    HALF_PLANE_V,
    NC_PAIR,
    PlaneEmbedding,
    PluriSection,
    SIGMA,
    SMOOTH_PAIR,
    UnknownBranch,
    embed_check,
    embed_search,
    gluing_ideal,
    glues,
    partner_sections,
    pullback_sigma,
    restrict,
)
from .conecalc import (
    ChartElement,
    ConeElement,
    ConeSection,
    IllegalPole,
    glued_pole_bound,
    mult_along_c2,
    pole_bound_s2,
    restrict_cone,
    restrict_cone_log_frame,
    to_chart,
)
from .geomcheck import (
    ECCurve,
    ECPoint,
    INFINITY,
    IntersectionLattice,
    NotSquarefree,
    WeightedHyperellipticCurve,
    binary_forms_share_root,
    blowup,
    ec_add,
    ec_mul,
    ec_neg,
    fixed_points,
    genus2_pencil_lattice,
    h0_p1,
    linear_equiv,
    nc_pullback_degree,
    node_count,
    product_ample,
    product_canonical_bidegree,
    sigma_node_disjoint,
)

__version__ = "0.1.0"
