"""Tests for curves, the group law, changes of model and Tate normal form."""

import random
from fractions import Fraction

import pytest

from src.core.curve import Point, new_curve, point_add, point_neg, scalar_mul
from src.core.isomorphism import Isomorphism
from src.core.tate import (
    TateForm,
    tate_curve,
    tate_curve_from_bc,
    tate_normal_form,
    tate_parameter,
)
from src.core.transforms import quadratic_twist, to_b_form, to_short_form
from src.errors import DomainError, InconsistencyError, SingularCurveError
from src.fields.rationals import squarefree_label
from src.fields.tower import TowerField


@pytest.mark.parametrize(
    "coefficients, discriminant",
    [
        ((0, 0, 0, 0, 1), -432),
        ((0, 0, 0, -1, 0), 64),
        ((0, 1, 1, -769, -8470), -19),
    ],
)
def test_discriminant(coefficients, discriminant):
    """Test discriminants of y^2 = x^3 + 1, y^2 = x^3 - x and 19a2."""
    assert new_curve(*coefficients).discriminant == discriminant


@pytest.mark.parametrize("coefficients", [(0, 0, 0, 0, 0), (0, 0, 0, -3, 2)])
def test_singular_model(coefficients):
    """Test singular coefficients are rejected."""
    with pytest.raises(SingularCurveError):
        new_curve(*coefficients)


def test_point_must_lie_on_curve(e_x3_plus_1):
    """Test points off the curve are rejected."""
    with pytest.raises(DomainError):
        e_x3_plus_1.point(1, 1)


def test_identity(e_x3_plus_1):
    """Test O is the identity and P + (-P) = O."""
    P = e_x3_plus_1.point(2, 3)
    origin = Point.infinity()
    assert point_add(e_x3_plus_1, P, origin) == P
    assert point_add(e_x3_plus_1, origin, P) == P
    assert point_add(e_x3_plus_1, P, point_neg(e_x3_plus_1, P)) == origin


@pytest.mark.parametrize("x, y", [(0, -1), (2, 3)])
def test_doubling_to_three_torsion(e_x3_plus_1, x, y):
    """Test 2*(0, -1) = 2*(2, 3) = (0, 1) on y^2 = x^3 + 1."""
    P = e_x3_plus_1.point(x, y)
    assert scalar_mul(e_x3_plus_1, 2, P) == e_x3_plus_1.point(0, 1)


def test_mixed_fields_rejected(e_x3_plus_1):
    """Test adding points over different fields fails."""
    P = e_x3_plus_1.point(2, 3)
    Q = P.promote(TowerField.of(-3))
    with pytest.raises(DomainError):
        e_x3_plus_1.add(P, Q)


def test_order(e_x3_plus_1):
    """Test orders of points on y^2 = x^3 + 1."""
    assert e_x3_plus_1.order(e_x3_plus_1.point(2, 3)) == 6
    assert e_x3_plus_1.order(e_x3_plus_1.point(-1, 0)) == 2
    assert e_x3_plus_1.order(Point.infinity()) == 1


def test_group_law_axioms_over_Q():
    """Test associativity, commutativity and inverses on y^2 = x^3 + 17."""
    E = new_curve(0, 0, 0, 0, 17)
    points = [E.point(x, y) for x, y in [(-2, 3), (-1, 4), (2, 5), (4, 9), (8, 23)]]
    rng = random.Random(17)
    for _ in range(10):
        P, Q, R = (rng.choice(points) for _ in range(3))
        assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))
        assert E.add(P, Q) == E.add(Q, P)
        assert E.add(P, E.neg(P)).is_infinity
        assert E.contains(E.add(P, Q))


def test_group_law_over_quadratic_field(e_x3_plus_1):
    """Test the group law on the 2-torsion of y^2 = x^3 + 1 over Q(sqrt(-3))."""
    E = e_x3_plus_1
    F = TowerField.of(-3)
    w = F.sqrt_of_label(-3)
    T1 = E.point(F.scalar(-1), F.zero())
    T2 = E.point((1 + w) / 2, F.zero())
    T3 = E.point((1 - w) / 2, F.zero())
    P = E.point(2, 3).promote(F)
    assert E.add(T1, T2) == T3
    assert E.add(E.add(T1, T2), P) == E.add(T1, E.add(T2, P))
    assert E.add(T2, P) == E.add(P, T2)


def test_scalar_mul_matches_repeated_addition(e_x3_plus_1):
    """Test n*P equals P added n times, for n up to 32."""
    E = e_x3_plus_1
    P = E.point(2, 3)
    Q = Point.infinity()
    for n in range(1, 33):
        Q = E.add(Q, P)
        assert scalar_mul(E, n, P) == Q
        assert Q.is_infinity == (n % 6 == 0)


def test_b_form():
    """Test y^2 + xy + y = x^3 + x^2 becomes y^2 = x^3 + 5/4 x^2 + 1/2 x + 1/4."""
    E = new_curve(1, 1, 1, 0, 0)
    B, iso = to_b_form(E)
    assert B.coefficients == (0, Fraction(5, 4), 0, Fraction(1, 2), Fraction(1, 4))
    assert iso.inverse().apply(B) == E
    assert B.discriminant == E.discriminant


def test_b_form_of_b_form_is_identity(e_x3_minus_x):
    """Test a curve already in b-form is left alone."""
    B, iso = to_b_form(e_x3_minus_x)
    assert B == e_x3_minus_x
    assert iso.is_identity()


def test_short_form(curve_19a2):
    """Test the short model is y^2 = x^3 - 27c4 x - 54c6 with the same j."""
    short, iso = to_short_form(curve_19a2)
    assert short.is_short
    assert short.a4 == -27 * curve_19a2.c4
    assert short.a6 == -54 * curve_19a2.c6
    assert short.j_invariant == curve_19a2.j_invariant
    assert iso.inverse().apply(short) == curve_19a2


def test_isomorphism_transports_points():
    """Test random changes of model keep points on the image curve."""
    E = new_curve(0, 0, 0, 0, 17)
    P = E.point(2, 5)
    rng = random.Random(5)
    for _ in range(8):
        u = Fraction(rng.choice([-3, -1, 1, 2]), rng.choice([1, 2, 5]))
        r, s, t = (Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
        iso = Isomorphism.of(u, r, s, t)
        image = iso.apply(E)
        assert image.contains(iso.map_point(P))
        assert iso.then(iso.inverse()).is_identity()
        assert iso.inverse().apply(image) == E


def test_isomorphism_needs_unit():
    """Test u = 0 is not a change of model."""
    with pytest.raises(DomainError):
        Isomorphism.of(0)


@pytest.mark.parametrize(
    "coefficients, d, expected",
    [
        ((0, 0, 0, 0, 1), -3, (0, 0, 0, 0, -27)),
        ((0, 0, 0, -1, 0), 2, (0, 0, 0, -4, 0)),
    ],
)
def test_quadratic_twist(coefficients, d, expected):
    """Test twists of y^2 = x^3 + 1 by -3 and y^2 = x^3 - x by 2."""
    assert quadratic_twist(new_curve(*coefficients), d) == new_curve(*expected)


def test_twice_twisted_curve_is_isomorphic(curve_19a2):
    """Test twisting twice by the same label gives a curve isomorphic to the original."""
    twice = quadratic_twist(quadratic_twist(curve_19a2, 5), 5)
    assert twice.j_invariant == curve_19a2.j_invariant
    assert squarefree_label(twice.discriminant / curve_19a2.discriminant) == 1


@pytest.mark.parametrize("d", [1, 12])
def test_twist_needs_squarefree_label(e_x3_plus_1, d):
    """Test twisting by 1 or a non-squarefree integer fails."""
    with pytest.raises(DomainError):
        quadratic_twist(e_x3_plus_1, d)


def test_tate_normal_form_of_tate_curve():
    """Test y^2 + xy + y = x^3 + x^2 with (0, 0) of order 4 gives (b, c) = (-1, 0)."""
    E = new_curve(1, 1, 1, 0, 0)
    form = tate_normal_form(E, E.point(0, 0))
    assert (form.b, form.c, form.order) == (-1, 0, 4)
    assert tate_parameter(form) == -1


def test_tate_normal_form_of_order_six(e_x3_plus_1):
    """Test y^2 = x^3 + 1 with (2, 3) lands in the order 6 family."""
    form = tate_normal_form(e_x3_plus_1, e_x3_plus_1.point(2, 3))
    assert form.order == 6
    assert form.b == form.c**2 + form.c
    assert tate_parameter(form) == Fraction(-1, 3)
    assert form.curve.order(form.curve.point(0, 0)) == 6


def test_tate_normal_form_needs_order_four(e_x3_plus_1):
    """Test a point of order 2 has no Tate normal form."""
    with pytest.raises(DomainError):
        tate_normal_form(e_x3_plus_1, e_x3_plus_1.point(-1, 0))


@pytest.mark.parametrize(
    "b, c, N, t",
    [
        (-1, 0, 4, -1),
        (6, 2, 6, 2),
        (10, Fraction(10, 3), 8, 3),
    ],
)
def test_tate_parameter(b, c, N, t):
    """Test the family parameter read off (b, c) for orders 4, 6 and 8."""
    form = TateForm(Fraction(b), Fraction(c), N, Isomorphism.identity())
    assert tate_parameter(form) == t


def test_tate_parameter_checks_relations():
    """Test (b, c) violating the order 6 relation is reported."""
    form = TateForm(Fraction(5), Fraction(2), 6, Isomorphism.identity())
    with pytest.raises(InconsistencyError):
        tate_parameter(form)


def test_tate_parameter_unknown_order():
    """Test order 5 has no parameter to extract."""
    form = TateForm(Fraction(3), Fraction(3), 5, Isomorphism.identity())
    with pytest.raises(DomainError):
        tate_parameter(form)


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8])
def test_tate_curve_has_point_of_order_N(N):
    """Test (0, 0) has order N on the family curve."""
    E = tate_curve(3, N)
    assert E.order(E.point(0, 0), cap=N) == N


@pytest.mark.parametrize("N, t", [(4, Fraction(-4)), (6, Fraction(2, 5)), (8, Fraction(4, 5))])
def test_tate_parameter_roundtrip(N, t):
    """Test building the family curve at t and reading t back."""
    E = tate_curve(t, N)
    assert tate_parameter(tate_normal_form(E, E.point(0, 0))) == t


def test_tate_curve_from_bc():
    """Test (b, c) = (-1, 0) gives y^2 + xy + y = x^3 + x^2, and t = 0 is a pole for order 8."""
    assert tate_curve_from_bc(-1, 0) == new_curve(1, 1, 1, 0, 0)
    with pytest.raises(DomainError):
        tate_curve(0, 8)
