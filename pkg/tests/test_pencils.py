from fractions import Fraction

import pytest
from hypothesis import given, settings

from projstruct.errors import DegenerateWedge, VerticalAtOrigin
from projstruct.expressions import expand
from projstruct.fields import VectorField
from projstruct.jets import Jet2
from projstruct.pencils import (
    INF,
    Foliation,
    Pencil,
    foliation_residual,
    is_geodesic,
    lie_derivative_form,
    member,
    member_value_along,
    slope,
    structure_from_pencil,
)
from projstruct.structures import ProjectiveStructure, geodesic_solve

from conftest import PROP_ORDER, jets, small_fractions

N = 10


def jexp(text, order=N):
    return expand(text, None, order)


def F(p, q, order=N):
    return Foliation(jexp(p, order), jexp(q, order))


def S(a, b, c, d, order=N):
    return ProjectiveStructure(jexp(a, order), jexp(b, order),
                               jexp(c, order), jexp(d, order))


# --- foliations ---------------------------------------------------------------


def test_slope_is_minus_p_over_q():
    assert slope(F("x - y", "1 + x")).agree(jexp("(y - x) / (1 + x)"))


def test_slope_rejects_vertical_leaf():
    with pytest.raises(VerticalAtOrigin):
        slope(F("1", "x"))


def test_foliation_must_not_vanish_at_origin():
    with pytest.raises(ValueError):
        Foliation(jexp("x"), jexp("y"))


def test_swapped_exchanges_the_axes():
    fol = F("1 - x/2", "x + y^2")
    back = fol.swapped().swapped()
    assert back.P.agree(fol.P) and back.Q.agree(fol.Q)
    assert fol.swapped().P.agree(jexp("y + x^2"))


def test_horizontal_lines_are_geodesics_of_the_trivial_structure():
    assert is_geodesic(F("0", "1"), S("0", "0", "0", "0"))


def test_vertical_lines_are_geodesics_via_the_swap():
    fol = F("1", "0")
    assert fol.is_vertical_at_origin()
    assert is_geodesic(fol, S("0", "0", "0", "0"))
    assert not is_geodesic(fol, S("0", "0", "0", "x"))


def test_parabolas_fail_against_the_trivial_structure():
    # leaves of dy - 2x dx are y = x^2 + c; residual s_x + s s_y = 2
    fol = F("-2*x", "1")
    res = foliation_residual(fol, S("0", "0", "0", "0"))
    assert res.agree(jexp("2"))
    assert not is_geodesic(fol, S("0", "0", "0", "0"))


# --- pencils ------------------------------------------------------------------


def test_wedge_and_members():
    pen = Pencil(F("exp(y)", "(1 + x) * exp(y)"), F("0", "1"))
    assert pen.wedge().agree(jexp("exp(y)"))
    assert member(pen, 0).agree(pen.omega0)
    assert member(pen, INF).agree(pen.omega_inf)
    two = member(pen, Fraction(2))
    assert two.P.agree(jexp("exp(y)"))
    assert two.Q.agree(jexp("(1 + x) * exp(y) + 2"))


def test_proportional_generators_are_rejected():
    with pytest.raises(DegenerateWedge):
        Pencil(F("1", "2"), F("1 + x", "2 + x^2"))


def test_structure_from_graph_pencil():
    # members y' = z solved by lines: the trivial structure
    pen = Pencil(F("1", "0"), F("0", "1"))
    assert structure_from_pencil(pen).agree(S("0", "0", "0", "0"))


def test_structure_from_pencil_with_unit_slot():
    # omega_0 = dx + g dy, omega_inf = dy gives (0, 0, g', 0)
    pen = Pencil(F("1", "x^2"), F("0", "1"))
    assert structure_from_pencil(pen).agree(S("0", "0", "2*x", "0"))


def test_structure_from_exponential_pencil():
    # omega_0 = exp(y)(dx + g dy), omega_inf = dy gives (0, 0, 1 + g', g)
    g = "1 + x"
    pen = Pencil(F("exp(y)", "(" + g + ") * exp(y)"), F("0", "1"))
    assert structure_from_pencil(pen).agree(S("0", "0", "2", g))


def test_structure_from_affine_pencil():
    # omega_0 = -(dx + (g + y) dy), omega_inf = dy gives (0, 0, g', 1)
    pen = Pencil(F("-1", "-(x + y)"), F("0", "1"))
    assert structure_from_pencil(pen).agree(S("0", "0", "1", "1"))


def test_structure_from_twisted_exponential_pencil():
    pen = Pencil(F("exp(x) * (y + exp(x))", "-(y + 2*exp(x))"),
                 F("-exp(x)", "1"))
    assert pen.wedge().agree(jexp("-exp(2*x)"))
    assert structure_from_pencil(pen).agree(
        S("exp(x)", "-1", "0", "exp(-2*x)"))


def test_structure_from_resonant_pencil():
    # the pencil whose z = 0 member is vertical at the origin
    pen = Pencil(F("(1 - x/2) * exp(x)", "x"), F("-exp(x)/2", "1"))
    assert structure_from_pencil(pen).agree(
        S("exp(x)/4", "0", "exp(-x)", "0"))


def test_all_members_are_geodesic_foliations():
    pen = Pencil(F("(1 - x/2) * exp(x)", "x"), F("-exp(x)/2", "1"))
    stq = structure_from_pencil(pen)
    for z in (Fraction(0), Fraction(1), Fraction(-1), Fraction(2, 3), INF):
        assert is_geodesic(member(pen, z), stq)


def test_member_value_is_a_first_integral():
    pen = Pencil(F("exp(x) * (y + exp(x))", "-(y + 2*exp(x))"),
                 F("-exp(x)", "1"))
    stq = structure_from_pencil(pen)
    curve = geodesic_solve(stq, Fraction(1, 3), Fraction(1, 5))
    z = member_value_along(pen, curve)
    assert (z - Jet2.constant(z.constant_term, z.order)).is_zero()
    # and a non-geodesic curve is not inside a single member
    bent = curve + Jet2.monomial(2, 0, Fraction(1, 7), curve.order)
    zb = member_value_along(pen, bent)
    assert not (zb - Jet2.constant(zb.constant_term, zb.order)).is_zero()


@settings(max_examples=25, deadline=None)
@given(p0=jets(order=PROP_ORDER, max_degree=2),
       q1=jets(order=PROP_ORDER, max_degree=2),
       pi=jets(order=PROP_ORDER, unit_constant=True, max_degree=2),
       z=small_fractions)
def test_pencil_members_solve_the_pencil_structure(p0, q1, pi, z):
    one = Jet2.constant(Fraction(1), PROP_ORDER)
    pen = Pencil(Foliation(p0, one + q1 * q1), Foliation(pi, Jet2.zero(PROP_ORDER)))
    stq = structure_from_pencil(pen)
    assert is_geodesic(member(pen, z), stq)
    assert is_geodesic(member(pen, INF), stq)


# --- Lie derivatives of forms -------------------------------------------------


def test_lie_derivative_of_coordinate_forms():
    v = VectorField(jexp("x*y"), jexp("y - x^2"))
    dp, dq = lie_derivative_form(v, F("1", "0"))
    assert dp.agree(jexp("y")) and dq.agree(jexp("x"))
    dp, dq = lie_derivative_form(v, F("0", "1"))
    assert dp.agree(jexp("-2*x")) and dq.agree(jexp("1"))


def test_lie_derivative_is_a_derivation_over_scaling():
    v = VectorField(jexp("1 + y"), jexp("x"))
    f = jexp("1 + x^2 * y")
    fol = F("y - 1", "1 + x")
    dp, dq = lie_derivative_form(v, fol)
    sp, sq = lie_derivative_form(v, Foliation(f * fol.P, f * fol.Q))
    vf = v.apply(f)
    assert sp.agree(vf * fol.P + f * dp)
    assert sq.agree(vf * fol.Q + f * dq)


def test_vertical_translation_fixes_the_graph_pencil_projectively():
    # d/dy sends omega_0 = exp(y)(dx + g dy) to itself, omega_inf = dy to 0
    g = "1 - x"
    pen = Pencil(F("exp(y)", "(" + g + ") * exp(y)"), F("0", "1"))
    dp, dq = lie_derivative_form(VectorField(jexp("0"), jexp("1")),
                                 pen.omega0)
    assert dp.agree(pen.omega0.P) and dq.agree(pen.omega0.Q)
    dp, dq = lie_derivative_form(VectorField(jexp("0"), jexp("1")),
                                 pen.omega_inf)
    assert dp.is_zero() and dq.is_zero()
