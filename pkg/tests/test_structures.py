import random

import pytest

from weakcross.crossed_coproduct import crossed_gamma
from weakcross.crossed_product import crossed_nabla
from weakcross.groupoid import cyclic_group, group_groupoid, groupoid_algebra
from weakcross.linalg import LinMap, ShapeError, identity, zero
from weakcross.structures import (
    ActionData,
    AlgebraData,
    CoalgebraData,
    check_action,
    check_algebra,
    check_algebra_morphism,
    check_coalgebra,
    check_coalgebra_morphism,
    check_linearity,
    convolution,
)
from support import group_algebra_z2, load, projection_biproduct, random_linmap, sweedler

ONE = LinMap.from_rows([[1]])


def rational_field():
    return AlgebraData(1, ONE, ONE), CoalgebraData(1, ONE, ONE)


# --------------------------------------------------------------- algebras

def test_rationals_form_an_algebra():
    a, _ = rational_field()
    assert check_algebra(a).ok


def test_groupoid_algebra_is_an_algebra():
    d = groupoid_algebra(load("iso2.gpd").groupoid)
    assert check_algebra(d.algebra).ok


def test_zero_product_with_nonzero_unit_fails_unit_law():
    a = AlgebraData(2, LinMap.from_rows([[1], [0]]), zero(4, 2))
    r = check_algebra(a)
    assert not r.ok
    assert r.status_of("associativity") == "pass"
    assert r.status_of("left-unit") == "fail"
    # the checks are not short-circuited: both unit laws are evaluated
    assert r.status_of("right-unit") == "fail"
    witness = r.find("left-unit").witness
    assert {"row", "col", "lhs", "rhs"} <= set(witness)


def test_shape_mismatch_is_an_error_not_a_report():
    with pytest.raises(ShapeError):
        AlgebraData(2, LinMap.from_rows([[1], [0]]), zero(3, 2))


# ------------------------------------------------------------- coalgebras

def test_grouplike_line_is_a_coalgebra():
    _, c = rational_field()
    assert check_coalgebra(c).ok


def test_groupoid_coalgebra_is_a_coalgebra():
    assert check_coalgebra(groupoid_algebra(load("s3.gpd").groupoid).coalgebra).ok


def test_zero_comultiplication_with_nonzero_counit_fails_counit_law():
    c = CoalgebraData(1, ONE, zero(1, 1))
    r = check_coalgebra(c)
    assert r.status_of("left-counit") == "fail" and r.status_of("right-counit") == "fail"
    assert r.status_of("coassociativity") == "pass"


def test_sweedler_structures_pass():
    d = sweedler()
    assert check_algebra(d.algebra).ok and check_coalgebra(d.coalgebra).ok


# -------------------------------------------------------------- morphisms

def test_identity_is_an_algebra_and_coalgebra_morphism():
    d = sweedler()
    assert check_algebra_morphism(identity(4), d.algebra, d.algebra).ok
    assert check_coalgebra_morphism(identity(4), d.coalgebra, d.coalgebra).ok


def test_subalgebra_inclusion_of_a_factorization_is_a_bialgebra_map():
    _, p, _ = projection_biproduct("s3.gpd")
    assert check_algebra_morphism(p.f, p.B.algebra, p.D.algebra).ok
    assert check_coalgebra_morphism(p.f, p.B.coalgebra, p.D.coalgebra).ok


def test_v_part_map_is_a_coalgebra_map_but_not_an_algebra_map_on_s3():
    _, p, _ = projection_biproduct("s3.gpd")
    assert check_coalgebra_morphism(p.g, p.D.coalgebra, p.B.coalgebra).ok
    r = check_algebra_morphism(p.g, p.D.algebra, p.B.algebra)
    assert r.status_of("unit-preserving") == "pass"
    assert r.status_of("multiplicative") == "fail"


def test_counit_killing_map_is_not_a_coalgebra_morphism():
    d = group_algebra_z2()
    r = check_coalgebra_morphism(zero(2, 2), d.coalgebra, d.coalgebra)
    assert r.status_of("counit-preserving") == "fail"
    # collapsing onto g keeps the counit, so only the zero map is caught
    collapse = LinMap.from_rows([[0, 0], [1, 1]])
    assert check_coalgebra_morphism(collapse, d.coalgebra, d.coalgebra).ok


# ------------------------------------------------------------ convolution

def test_identity_convolved_with_antipode_is_the_target_map():
    G = load("iso2.gpd").groupoid
    d = groupoid_algebra(G)
    got = convolution(d.algebra.id, d.antipode, d.coalgebra, d.algebra)
    names = G.names
    for j, a in enumerate(names):
        assert got.column(j) == {names.index(G.identity_of(G.tgt(a))): 1}


def test_unit_counit_is_the_convolution_unit_on_a_group_algebra():
    d = groupoid_algebra(group_groupoid(cyclic_group(3)))
    unit = d.unit @ d.counit
    f = random_linmap(random.Random(4), 3, 3)
    assert convolution(unit, f, d.coalgebra, d.algebra) == f
    assert convolution(f, unit, d.coalgebra, d.algebra) == f


def test_convolution_is_associative_over_a_two_dimensional_coalgebra():
    c = group_algebra_z2().coalgebra
    a = sweedler().algebra
    rng = random.Random(9)
    for _ in range(10):
        f, g, h = (random_linmap(rng, 2, 4) for _ in range(3))
        left = convolution(convolution(f, g, c, a), h, c, a)
        right = convolution(f, convolution(g, h, c, a), c, a)
        assert left == right


def test_convolution_shape_checked():
    d = group_algebra_z2()
    with pytest.raises(ShapeError):
        convolution(identity(3), identity(2), d.coalgebra, d.algebra)


# --------------------------------------------------------------- actions

def _regular_actions(d):
    return (ActionData(d.dim, d.mult, "left-module", d.algebra),
            ActionData(d.dim, d.mult, "right-module", d.algebra),
            ActionData(d.dim, d.comult, "left-comodule", d.coalgebra),
            ActionData(d.dim, d.comult, "right-comodule", d.coalgebra))


def test_regular_actions_satisfy_their_axioms():
    for act in _regular_actions(sweedler()):
        assert check_action(act).ok, act.side


def test_identity_and_zero_are_linear_for_any_action():
    d = sweedler()
    for act in _regular_actions(d):
        assert check_linearity(identity(4), act, act).ok
        assert check_linearity(zero(4, 4), act, act).ok


def test_right_multiplication_is_left_linear_but_not_right_linear():
    d = sweedler()
    x = LinMap.from_rows([[0], [1], [0], [0]])
    right_mult_by_x = d.mult @ (identity(4) ^ x)
    left, right = _regular_actions(d)[:2]
    assert check_linearity(right_mult_by_x, left, left).ok
    assert not check_linearity(right_mult_by_x, right, right).ok


def test_side_mismatch_is_an_error():
    d = sweedler()
    left, right = _regular_actions(d)[:2]
    with pytest.raises(ValueError):
        check_linearity(identity(4), left, right)


def test_comodule_needs_a_coalgebra():
    d = sweedler()
    with pytest.raises(TypeError):
        ActionData(4, d.comult, "left-comodule", d.algebra)


def test_nabla_is_linear_and_gamma_colinear_on_the_biproduct_layout():
    """The product side lives on C (x) A with A acting on the right; the
    coproduct side is C (x) A with C coacting on the left."""
    _, p, pb = projection_biproduct("s3.gpd")
    A, C = p.B.algebra, pb.base.coalgebra
    n = C.dim * A.dim
    nabla = crossed_nabla(pb.data.product_side)
    act = ActionData(n, identity(C.dim) ^ A.mult, "right-module", A)
    assert check_linearity(nabla, act, act).ok
    gamma = crossed_gamma(pb.data.coproduct_side)
    coact = ActionData(n, C.comult ^ identity(A.dim), "left-comodule", C)
    assert check_linearity(gamma, coact, coact).ok
