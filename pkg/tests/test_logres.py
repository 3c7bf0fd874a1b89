"""Restriction, gluing, and embedding tests for the plane-chart models."""

from random import Random

import pytest

from nccanon.cli import parse_family
from nccanon.exactalg import (
    LaurentPolynomial,
    NegativeExponentAtRestriction,
    parse_polynomial,
)
from nccanon.logres import (
    ASSIGNMENT_0XY0,
    CHAIN_PLANES,
    HALF_PLANE_U,
    HALF_PLANE_V,
    NC_PAIR,
    SMOOTH_PAIR,
    BranchRestriction,
    EmbeddingAssignment,
    EmbeddingNotFound,
    PlaneEmbedding,
    PluriSection,
    UnknownBranch,
    embed_check,
    embed_search,
    gluing_ideal,
    glues,
    partner_sections,
    pullback_sigma,
    restrict,
)
from nccanon.monideal import MonomialIdeal


def nc_section(m: int, coeff_src: str, meromorphic=False) -> PluriSection:
    coeff = parse_polynomial(coeff_src, NC_PAIR.variables)
    return PluriSection(NC_PAIR, m, coeff, meromorphic)


def upoly(src: str, var: str) -> LaurentPolynomial:
    return parse_polynomial(src, (var,))


# -- restriction rules ---------------------------------------------------------


def test_nc_restriction_signs():
    # the curve generator restricts to -dx/x on (y=0) and dy/y on (x=0)
    r_y = restrict(nc_section(1, "1"), "y")
    assert r_y == BranchRestriction("x", 1, upoly("-x^-1", "x"))
    assert r_y.pole_order == 1
    r_x = restrict(nc_section(1, "1"), "x")
    assert r_x == BranchRestriction("y", 1, upoly("y^-1", "y"))


def test_nc_restriction_examples():
    assert restrict(nc_section(1, "x*y"), "x").h.is_zero
    assert restrict(nc_section(1, "y^2"), "x") == BranchRestriction(
        "y", 1, upoly("y", "y")
    )
    cubic = PluriSection(SMOOTH_PAIR, 2, parse_polynomial("x^3", ("x", "y")))
    assert restrict(cubic, "y") == BranchRestriction("x", 2, upoly("x^3", "x"))
    assert restrict(cubic, "y").pole_order == 0


def test_half_plane_restrictions():
    one_u = PluriSection(HALF_PLANE_U, 1, parse_polynomial("1", ("u1", "v1")))
    assert restrict(one_u, "u1") == BranchRestriction("v1", 1, upoly("1", "v1"))
    one_v = PluriSection(HALF_PLANE_V, 1, parse_polynomial("1", ("u2", "v2")))
    assert restrict(one_v, "v2") == BranchRestriction("u2", 1, upoly("-1", "u2"))


def test_unknown_branch():
    with pytest.raises(UnknownBranch):
        restrict(nc_section(1, "1"), "u1")
    with pytest.raises(UnknownBranch):
        pullback_sigma(BranchRestriction("x", 1, upoly("x", "x")))


def test_meromorphic_coefficient():
    with pytest.raises(ValueError):
        nc_section(1, "x^-1")
    section = nc_section(1, "x^-1*y", meromorphic=True)
    with pytest.raises(NegativeExponentAtRestriction):
        restrict(section, "x")


# -- the pullback through the gluing -------------------------------------------


def test_pullback_examples():
    dv1 = BranchRestriction("v1", 1, upoly("1", "v1"))
    assert pullback_sigma(dv1) == BranchRestriction("y", 1, upoly("1", "y"))
    du2 = BranchRestriction("u2", 1, upoly("1", "u2"))
    assert pullback_sigma(du2) == BranchRestriction("x", 1, upoly("1", "x"))
    squared = BranchRestriction("v1", 2, upoly("v1", "v1"))
    assert pullback_sigma(squared) == BranchRestriction("y", 2, upoly("y", "y"))


def test_pullback_restrict_multiplicative():
    rng = Random(37)
    for _ in range(60):
        m1, m2 = rng.randrange(1, 4), rng.randrange(1, 4)
        c1 = LaurentPolynomial.monomial(
            HALF_PLANE_U.variables,
            {"u1": rng.randrange(3), "v1": rng.randrange(3)},
            rng.randrange(1, 4),
        )
        c2 = LaurentPolynomial.monomial(
            HALF_PLANE_U.variables,
            {"u1": rng.randrange(3), "v1": rng.randrange(3)},
            rng.randrange(1, 4),
        )
        s1 = PluriSection(HALF_PLANE_U, m1, c1)
        s2 = PluriSection(HALF_PLANE_U, m2, c2)
        lhs = pullback_sigma(restrict(s1 * s2, "u1"))
        rhs = pullback_sigma(restrict(s1, "u1")) * pullback_sigma(restrict(s2, "u1"))
        assert lhs == rhs


def test_restriction_of_product_is_product_of_restrictions():
    rng = Random(41)
    for _ in range(60):
        s1 = nc_section(rng.randrange(1, 4), "x^2*y + 2*x*y")
        s2 = nc_section(rng.randrange(1, 4), "x*y^3 + x*y")
        for branch in ("x", "y"):
            assert restrict(s1 * s2, branch) == restrict(s1, branch) * restrict(
                s2, branch
            )


# -- the gluing condition -------------------------------------------------------


def zero_partner(model, m):
    return PluriSection(model, m, LaurentPolynomial.zero(model.variables))


def test_glues_examples():
    # all three restrictions vanish
    assert glues(
        nc_section(1, "x*y"), zero_partner(HALF_PLANE_U, 1), zero_partner(HALF_PLANE_V, 1)
    )
    # weight 2: y^2 restricts to 1 on (x=0); the constant partner matches
    assert glues(
        nc_section(2, "y^2"),
        PluriSection(HALF_PLANE_U, 2, parse_polynomial("1", HALF_PLANE_U.variables)),
        zero_partner(HALF_PLANE_V, 2),
    )
    # pole 1 against holomorphic partners: no gluing
    assert not glues(
        nc_section(1, "1"), zero_partner(HALF_PLANE_U, 1), zero_partner(HALF_PLANE_V, 1)
    )


def test_glues_weight_mismatch():
    with pytest.raises(ValueError):
        glues(
            nc_section(2, "x*y"),
            zero_partner(HALF_PLANE_U, 1),
            zero_partner(HALF_PLANE_V, 2),
        )


def test_sign_coherence():
    # nc coefficient y^m restricts to 1 on (x=0); the +1 partner glues
    # exactly at even weight, so flipping parity flips the verdict
    for m in (2, 4):
        assert glues(
            nc_section(m, f"y^{m}"),
            PluriSection(HALF_PLANE_U, m, parse_polynomial("1", HALF_PLANE_U.variables)),
            zero_partner(HALF_PLANE_V, m),
        )
    for m in (1, 3):
        assert not glues(
            nc_section(m, f"y^{m}"),
            PluriSection(HALF_PLANE_U, m, parse_polynomial("1", HALF_PLANE_U.variables)),
            zero_partner(HALF_PLANE_V, m),
        )


# -- the gluing ideal ------------------------------------------------------------


def oracle_gluing_exponents(m: int) -> frozenset:
    """Independent divisibility oracle: a monomial x^a*y^b admits partners
    iff its (x=0) restriction is divisible by y^m and its (y=0) restriction
    by x^m, i.e. (a>=1 or b>=m) and (b>=1 or a>=m)."""
    hits = set()
    for a in range(m + 1):
        for b in range(m + 1):
            if (a >= 1 or b >= m) and (b >= 1 or a >= m):
                hits.add((a, b))
    minimal = {
        x
        for x in hits
        if not any(y != x and all(p <= q for p, q in zip(y, x)) for y in hits)
    }
    return frozenset(minimal)


def test_gluing_ideal_matches_family():
    family = parse_family("x*y, x^m, y^m")
    for m in range(1, 21):
        computed = gluing_ideal(m)
        assert computed == family.instantiate(m)
        assert computed.generators == oracle_gluing_exponents(m)


def test_gluing_ideal_small_values():
    assert gluing_ideal(1) == MonomialIdeal(("x", "y"), {(1, 0), (0, 1)})
    assert gluing_ideal(3) == MonomialIdeal(("x", "y"), {(1, 1), (3, 0), (0, 3)})
    assert gluing_ideal(7) == MonomialIdeal(("x", "y"), {(1, 1), (7, 0), (0, 7)})
    with pytest.raises(ValueError):
        gluing_ideal(0)


def test_members_glue_and_non_members_do_not():
    for m in range(1, 11):
        ideal = gluing_ideal(m)
        for exps in ideal.generators:
            section = PluriSection(
                NC_PAIR,
                m,
                LaurentPolynomial.monomial(NC_PAIR.variables, {"x": exps[0], "y": exps[1]}),
            )
            partners = partner_sections(section)
            assert partners is not None
            assert glues(section, *partners)
        for a in range(m):
            for b in range(m - a):
                if ideal.member((a, b)):
                    continue
                section = PluriSection(
                    NC_PAIR,
                    m,
                    LaurentPolynomial.monomial(NC_PAIR.variables, {"x": a, "y": b}),
                )
                assert partner_sections(section) is None


# -- embedding of the triple point ------------------------------------------------


def test_assignment_0xy0_fails_glued_points():
    # images of a glued point differ: (0,0,y,0) on one side, (y,0,0,0) on
    # the other, so the hand-written maps are inconsistent with the gluing
    assert not embed_check(ASSIGNMENT_0XY0)
    assert ASSIGNMENT_0XY0.nc.param_image(1) != ASSIGNMENT_0XY0.half_u.param_image(1)


def test_embed_check_detects_sign_flip():
    good = embed_search()
    assert embed_check(good)
    flipped = EmbeddingAssignment(
        good.nc,
        PlaneEmbedding(good.half_u.axes, (good.half_u.signs[0], -good.half_u.signs[1])),
        good.half_v,
    )
    assert not embed_check(flipped)


def test_embed_check_rejects_repeated_planes():
    same = PlaneEmbedding((0, 1), (1, 1))
    assert not embed_check(EmbeddingAssignment(same, same, same))
    degenerate = PlaneEmbedding((2, 2), (1, 1))
    assert not embed_check(EmbeddingAssignment(degenerate, same, PlaneEmbedding((2, 3), (1, 1))))


def test_embed_search_full_space():
    found = embed_search()
    assert embed_check(found)
    # deterministic: repeated searches return the same assignment
    assert embed_search() == found


def test_embed_search_chain_planes():
    found = embed_search(CHAIN_PLANES)
    assert embed_check(found)
    spans = {found.nc.spanned(), found.half_u.spanned(), found.half_v.spanned()}
    assert spans == set(CHAIN_PLANES)
    # the nc chart must sit on the middle component of the chain
    assert found.nc.spanned() == frozenset({0, 3})


def test_embed_search_empty_pool():
    with pytest.raises(EmbeddingNotFound):
        embed_search([])
