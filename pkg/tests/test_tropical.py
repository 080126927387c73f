from fractions import Fraction
from typing import Callable, Tuple

import pytest
from hypothesis import given
from hypothesis.strategies import integers

from polygonal import (
    CoordinateFrame,
    IdentityTest,
    PLMap,
    TropExpr,
    Triangulation,
    WhiteheadMove,
    adjacent_pairs,
    bending_plmap,
    bending_polytope,
    caterpillar,
    flip_path,
    lattice_points,
    moment_polytope,
    path_plmap,
    transform_polytope_check,
    whitehead_plmap,
)
from polygonal.catalog import side_lengths
from polygonal.config import DEFAULT_SAMPLES, DEFAULT_SEED
from polygonal.errors import InvalidArgumentError
from polygonal.tropical import (
    bending_path_plmap,
    compose_plmaps,
    evaluate,
    integrality_check,
    maps_agree,
    min_identity,
    range_lengths,
    reverse_plmap,
    substitute,
    topological_sort,
)
from polygonal.verify import identities_report

from .strategies import moves, small_rationals

RECTANGLE = Triangulation.from_arcs(5, [(2, 3), (2, 3, 4)])

two_arg, four_arg = IdentityTest._tests()

# ## Identity catalogue, over rationals and over expression graphs


@pytest.mark.plmap
@given(small_rationals, small_rationals)
@pytest.mark.parametrize("fn", two_arg)
def test_two_args(fn: Tuple[str, Callable], a: Fraction, b: Fraction) -> None:
    name, base_fn = fn
    lhs, rhs = base_fn(a, b)
    assert lhs == rhs, name


@pytest.mark.plmap
@given(small_rationals, small_rationals, small_rationals, small_rationals)
@pytest.mark.parametrize("fn", four_arg)
def test_four_args(
    fn: Tuple[str, Callable], a: Fraction, b: Fraction, c: Fraction, d: Fraction
) -> None:
    name, base_fn = fn
    lhs, rhs = base_fn(a, b, c, d)
    assert lhs == rhs, name


@pytest.mark.plmap
@given(small_rationals, small_rationals)
@pytest.mark.parametrize("fn", two_arg)
def test_two_args_expr(fn: Tuple[str, Callable], a: Fraction, b: Fraction) -> None:
    "The same identities built as expression graphs and evaluated"
    name, base_fn = fn
    x, y = TropExpr.coordinate(2, 0), TropExpr.coordinate(2, 1)
    lhs, rhs = base_fn(x, y)
    assert lhs([a, b]) == rhs([a, b]), name


@pytest.mark.plmap
@given(small_rationals, small_rationals, small_rationals, small_rationals)
@pytest.mark.parametrize("fn", four_arg)
def test_four_args_expr(
    fn: Tuple[str, Callable], a: Fraction, b: Fraction, c: Fraction, d: Fraction
) -> None:
    name, base_fn = fn
    xs = [TropExpr.coordinate(4, i) for i in range(4)]
    lhs, rhs = base_fn(*xs)
    assert evaluate([lhs], [a, b, c, d]) == evaluate([rhs], [a, b, c, d]), name


@pytest.mark.plmap
def test_min_identity_value() -> None:
    assert min_identity(Fraction(3), Fraction(-1)) == (-3, -3)
    first, second = range_lengths(1, 2, 3, 4)
    assert first == second == 2


# ## Expression graphs


@pytest.mark.plmap
def test_expression_graph() -> None:
    x = TropExpr.coordinate(2, 0)
    y = TropExpr.coordinate(2, 1)
    shared = TropExpr.min_of(x, y)
    e = shared + shared * 2 - 1
    order = topological_sort([e])
    ids = [n.unique_id for n in order]
    assert len(ids) == len(set(ids))
    assert ids.index(shared.unique_id) < ids.index(e.unique_id)
    assert e([4, 1]) == 2
    assert evaluate([e, shared], [Fraction(1, 2), 3]) == [Fraction(1, 2), Fraction(1, 2)]
    assert len(e.leaves()) == 3


@pytest.mark.plmap
def test_expression_errors() -> None:
    with pytest.raises(InvalidArgumentError):
        TropExpr("max")
    with pytest.raises(InvalidArgumentError):
        TropExpr.coordinate(2, 0) + TropExpr.coordinate(3, 0)
    with pytest.raises(InvalidArgumentError):
        PLMap(2, (TropExpr.coordinate(2, 0),))


@pytest.mark.plmap
def test_substitute_and_compose() -> None:
    x, y = TropExpr.coordinate(2, 0), TropExpr.coordinate(2, 1)
    swap = PLMap(2, (y, x))
    shear = PLMap(2, (x + y, y))
    (out,) = substitute([x - y], [x * 3, y])
    assert out([1, 1]) == 2
    # right to left: shear after swap
    f = compose_plmaps([shear, swap])
    assert f([1, 5]) == (6, 1)
    assert compose_plmaps([], dim=2)([7, 8]) == (7, 8)
    with pytest.raises(InvalidArgumentError):
        compose_plmaps([])


@pytest.mark.plmap
def test_to_json() -> None:
    x = TropExpr.coordinate(2, 0)
    data = PLMap(2, (TropExpr.min_of(x, 1), x * Fraction(1, 2))).to_json()
    assert data["dim"] == 2
    assert data["coords"][0] == {
        "min": [
            {"affine": {"v": ["1", "0"], "c": "0"}},
            {"affine": {"v": ["0", "0"], "c": "1"}},
        ]
    }
    assert data["coords"][1]["scale"] == "1/2"


# ## Whitehead maps


@pytest.mark.plmap
@given(moves(sizes=integers(4, 5)))
def test_whitehead_bijection(data: Tuple[Triangulation, Triangulation, WhiteheadMove]) -> None:
    T, T2, move = data
    frame = CoordinateFrame(T, T.n)
    pl = whitehead_plmap(frame, move)
    assert integrality_check(pl, frame)
    report = transform_polytope_check(
        pl, moment_polytope(T, T.n), moment_polytope(T2, T.n), volume=False
    )
    assert report.passed, report.render()


@pytest.mark.plmap
@given(moves())
def test_whitehead_reverse(data: Tuple[Triangulation, Triangulation, WhiteheadMove]) -> None:
    "Flipping back undoes the map"
    T, _, move = data
    frame = CoordinateFrame(T, T.n)
    there = whitehead_plmap(frame, move)
    back = reverse_plmap(frame, move)
    points = lattice_points(moment_polytope(T, T.n))
    assert maps_agree(back.compose(there), PLMap.identity(frame.dim), points) is None


@pytest.mark.plmap
def test_whitehead_wrong_move() -> None:
    T = caterpillar(5)
    move = flip_path(RECTANGLE, T)[0]
    with pytest.raises(InvalidArgumentError):
        whitehead_plmap(CoordinateFrame(T, 5), move)


@pytest.mark.plmap
def test_path_bijection() -> None:
    pl, target = path_plmap(RECTANGLE, caterpillar(5), 5)
    assert target == caterpillar(5)
    report = transform_polytope_check(
        pl, moment_polytope(RECTANGLE, 5), moment_polytope(target, 5)
    )
    assert report.passed, report.render()
    assert report.counts["source"] == report.counts["target"]


@pytest.mark.plmap
def test_corrupted_map_fails() -> None:
    pl, target = path_plmap(RECTANGLE, caterpillar(5), 5)
    broken = PLMap(pl.dim, (pl.coords[0] + 1,) + pl.coords[1:])
    report = transform_polytope_check(
        broken, moment_polytope(RECTANGLE, 5), moment_polytope(target, 5), volume=False
    )
    assert not report.passed
    assert report.failures()[0][0] == "image"


# ## Bending coordinates


@pytest.mark.plmap
def test_rectangle_first_move() -> None:
    r = side_lengths["rectangle"]
    move = flip_path(RECTANGLE, caterpillar(5))[0]
    pl = bending_plmap(RECTANGLE, move, r)
    for x1, x2 in lattice_points(bending_polytope(RECTANGLE, r)):
        assert pl([x1, x2]) == (x1, x2 + x1 - r[4])


@pytest.mark.plmap
def test_rectangle_to_trapezoid() -> None:
    r = side_lengths["rectangle"]
    pl, target = bending_path_plmap(RECTANGLE, caterpillar(5), r)
    report = transform_polytope_check(
        pl, bending_polytope(RECTANGLE, r), bending_polytope(target, r)
    )
    assert report.passed, report.render()
    assert report.counts["volume"] == 8


@pytest.mark.plmap
@pytest.mark.slow
def test_whitehead_bijection_hexagon() -> None:
    for T, T2, move in adjacent_pairs(6):
        frame = CoordinateFrame(T, 6)
        pl = whitehead_plmap(frame, move)
        assert integrality_check(pl, frame)
        report = transform_polytope_check(pl, moment_polytope(T, 6), moment_polytope(T2, 6), volume=False)
        assert report.passed, report.render()


@pytest.mark.plmap
def test_identities_seeded() -> None:
    report = identities_report(seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES)
    assert report.passed, report.render()
    names = [k for k, _ in report.named_results()]
    assert len(names) == 2 * (len(two_arg) + len(four_arg))
    assert all(r.detail == f"{DEFAULT_SAMPLES} samples" for r in report.results())
