from typing import Tuple

import pytest
from hypothesis import given

from polygonal import (
    LaurentPoly,
    RationalExpr,
    Side,
    Triangulation,
    VariableSpace,
    WhiteheadMove,
    adjacent_pairs,
    caterpillar,
    edge_monomial,
    geometric_lift,
    lift_verify,
    potential,
    potential_terms,
    reverse_move,
    tropical_check,
    tropicalize,
)
from polygonal.errors import (
    InvalidArgumentError,
    InvariantViolation,
    NotFoundError,
    NotSubtractionFreeError,
)
from polygonal.laurent import (
    format_monomial,
    poly_from_terms,
    rational_equal,
    substitute,
    substitute_rational,
)

from .strategies import moves, triangulations

RECTANGLE = Triangulation.from_arcs(5, [(2, 3), (2, 3, 4)])
SPACE4 = VariableSpace(4)

# ## Laurent polynomials


@pytest.mark.symbolic
def test_space() -> None:
    assert SPACE4.names == ("y_e1", "y_e2", "y_e3", "y_d1", "Q")
    assert SPACE4.diagonal(0) == 3 and SPACE4.q == 4
    with pytest.raises(InvariantViolation):
        SPACE4.check((0, 0, 0, 1, 0))
    with pytest.raises(InvalidArgumentError):
        SPACE4.check((0, 0, 0))


@pytest.mark.symbolic
def test_arithmetic() -> None:
    y = LaurentPoly.variable(SPACE4, 3)
    one = LaurentPoly.constant(SPACE4, 1)
    p = (y + one) ** 2
    assert len(p) == 3
    assert (p - p).is_zero()
    assert (y**-1) * y == one
    assert p.degree_in(3) == (0, 4)
    with pytest.raises(InvalidArgumentError):
        (y + one) ** -1


@pytest.mark.symbolic
def test_substitute() -> None:
    y = LaurentPoly.variable(SPACE4, 3)
    z = LaurentPoly.variable(SPACE4, 0)
    one = LaurentPoly.constant(SPACE4, 1)
    p = y + y**-1
    # identity rule
    assert rational_equal(substitute(p, 3, RationalExpr.of(y)), RationalExpr.of(p))
    # y := z^2 gives (z^4 + 1) / z^2
    out = substitute(p, 3, RationalExpr.of(z**2))
    assert rational_equal(out, RationalExpr(z**4 + one, z**2))


@pytest.mark.symbolic
def test_rational_equal() -> None:
    y = LaurentPoly.variable(SPACE4, 3)
    z = LaurentPoly.variable(SPACE4, 1)
    one = LaurentPoly.constant(SPACE4, 1)
    assert rational_equal(RationalExpr(y, one), RationalExpr(y**2, y))
    p, q = y + z, z + one
    assert rational_equal(RationalExpr(p, q), RationalExpr(p * z, q * z))
    assert not rational_equal(RationalExpr(p, q), RationalExpr(q, p))
    with pytest.raises(InvalidArgumentError):
        RationalExpr(p, LaurentPoly(SPACE4))


# ## Potential functions


@pytest.mark.symbolic
def test_edge_monomials() -> None:
    T = caterpillar(4)
    assert edge_monomial(T, Side(4, 1)) == (1, 0, 0, 0, 0)
    assert edge_monomial(T, Side(4, 4)) == (-1, -1, -1, 0, 2)
    assert edge_monomial(T, T.diagonals[0]) == (1, 1, 0, -2, 0)


@pytest.mark.symbolic
def test_square_potential() -> None:
    "y_e1/y_d + y_e2/y_d + y_d + Q/(y_e3 y_d) + Q y_d/(y_e1 y_e2) + y_e1 y_e2 y_e3/(Q y_d)"
    expected = poly_from_terms(
        SPACE4,
        [
            ((2, 0, 0, -2, 0), 1),
            ((0, 2, 0, -2, 0), 1),
            ((0, 0, 0, 2, 0), 1),
            ((0, 0, -2, -2, 2), 1),
            ((-2, -2, 0, 2, 2), 1),
            ((2, 2, 2, -2, -2), 1),
        ],
    )
    assert potential(caterpillar(4)) == expected
    assert "y_d1" in potential_terms(expected)
    assert format_monomial(SPACE4, (1, 0, 0, -2, 2)) == "y_e1^{1/2} * y_d1^{-1} * Q"


@pytest.mark.symbolic
def test_triangle_potential() -> None:
    assert len(potential(caterpillar(3))) == 3


@pytest.mark.symbolic
@given(triangulations())
def test_potential_terms(T: Triangulation) -> None:
    p = potential(T)
    assert len(p) == 3 * (T.n - 2)
    assert all(c == 1 for _, c in p.monomials())


# ## Geometric lifts


@pytest.mark.symbolic
@given(moves())
def test_lift_shape(data: Tuple[Triangulation, Triangulation, WhiteheadMove]) -> None:
    T, _, move = data
    rule = geometric_lift(move, T)
    for r in (rule.pullback, rule.pushforward):
        assert r.subtraction_free
        assert 1 <= len(r.num) <= 2 and 1 <= len(r.den) <= 2


@pytest.mark.symbolic
@given(moves())
def test_lift_involution(data: Tuple[Triangulation, Triangulation, WhiteheadMove]) -> None:
    "Lifting a move and then its reverse is the identity substitution"
    T, T2, move = data
    rule = geometric_lift(move, T)
    back = geometric_lift(reverse_move(T, move), T2)
    y = RationalExpr.of(LaurentPoly.variable(rule.pullback.space, rule.var))
    out = substitute_rational(y, rule.var, rule.pullback)
    out = substitute_rational(out, back.var, back.pullback)
    assert rational_equal(out, y)


@pytest.mark.symbolic
def test_lift_wrong_triangulation() -> None:
    move = adjacent_pairs(5)[0][2]
    other = next(t for t, _, _ in adjacent_pairs(5) if move.removed not in t.diagonals)
    with pytest.raises((InvalidArgumentError, NotFoundError)):
        geometric_lift(move, other)


@pytest.mark.symbolic
@pytest.mark.parametrize("n", [4, 5])
def test_lift_verify_pairs(n: int) -> None:
    for T1, T2, _ in adjacent_pairs(n):
        report = lift_verify(T1, T2)
        assert report.passed, report.render()
        assert report.counts["steps"] == 1


@pytest.mark.symbolic
@pytest.mark.slow
def test_lift_verify_hexagon() -> None:
    for T1, T2, _ in adjacent_pairs(6):
        assert lift_verify(T1, T2).passed


@pytest.mark.symbolic
def test_lift_verify_paths() -> None:
    report = lift_verify(RECTANGLE, caterpillar(5))
    assert report.passed
    assert report.counts["steps"] == 2
    same = lift_verify(RECTANGLE, RECTANGLE)
    assert same.passed and same.counts["steps"] == 0
    with pytest.raises(InvalidArgumentError):
        lift_verify(caterpillar(4), caterpillar(5))


# ## Tropicalization


@pytest.mark.symbolic
def test_tropicalize() -> None:
    y = LaurentPoly.variable(SPACE4, 0)
    d = LaurentPoly.variable(SPACE4, 3)
    mono = tropicalize(RationalExpr.of(y), 4)
    assert mono([3, 0, 0, 0]) == 3
    both = tropicalize(RationalExpr.of(d + d**-1), 4)
    assert both([0, 0, 0, 2]) == -2
    assert both([0, 0, 0, -5]) == -5
    q = LaurentPoly.variable(SPACE4, SPACE4.q)
    assert tropicalize(RationalExpr.of(q), 4)([0, 0, 0, 0]) == 4
    with pytest.raises(NotSubtractionFreeError):
        tropicalize(RationalExpr.of(y - d), 4)


@pytest.mark.symbolic
@pytest.mark.parametrize("n", [4, 5])
def test_tropical_agrees(n: int) -> None:
    for T1, _, move in adjacent_pairs(n):
        report = tropical_check(T1, move)
        assert report.passed, report.render()
        assert report.counts["points"] > 0
