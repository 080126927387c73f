from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis.strategies import DataObject, data, fractions, lists

from polygonal import (
    AffineForm,
    CoordinateFrame,
    Polytope,
    Side,
    Triangulation,
    bending_polytope,
    caterpillar,
    ehrhart_volume,
    enumerate_triangulations,
    interior_lattice_points,
    lattice_count,
    lattice_points,
    length_form,
    moment_polytope,
    predicted_vertices,
    reflexive_shift,
    reflexivity_check,
    slice_point,
    vertices,
)
from polygonal.catalog import side_lengths
from polygonal.errors import (
    EmptySpaceError,
    InvalidArgumentError,
    ResourceLimitError,
    UnboundedError,
)
from polygonal.polytope import affine_rank

from .strategies import triangulations

RECTANGLE = Triangulation.from_arcs(5, [(2, 3), (2, 3, 4)])

# ## Basic polytopes


@pytest.mark.polytope
def test_box() -> None:
    P = Polytope.box([0, 0], [2, 3])
    assert P.is_bounded()
    assert len(vertices(P)) == 4
    assert lattice_count(P) == 12
    assert lattice_count(P, 2) == 35
    assert len(interior_lattice_points(P)) == 2
    assert ehrhart_volume(P) == 6


@pytest.mark.polytope
def test_rational_box_volume() -> None:
    P = Polytope.box([0, 0], [Fraction(1, 2), 3])
    assert ehrhart_volume(P) == Fraction(3, 2)


@pytest.mark.polytope
def test_unbounded() -> None:
    P = Polytope(2, (AffineForm.coordinate(2, 0), AffineForm.coordinate(2, 1)))
    assert not P.is_bounded()
    with pytest.raises(UnboundedError):
        lattice_points(P)


@pytest.mark.polytope
def test_flat() -> None:
    flat = Polytope.box([0, 0], [0, 2])
    assert Polytope.box([0, 0], [1, 1]).translate([5, 5]).contains([-5, -4])
    assert ehrhart_volume(flat) == 0
    assert lattice_count(flat) == 3


@pytest.mark.polytope
def test_affine_rank() -> None:
    assert affine_rank([]) == -1
    assert affine_rank([(1, 2)]) == 0
    assert affine_rank([(0, 0), (1, 1), (Fraction(5, 2), Fraction(5, 2))]) == 1
    assert affine_rank(vertices(Polytope.box([0, 0, 0], [1, 1, 1]))) == 3
    assert affine_rank(vertices(Polytope.box([0, 0, 0], [1, 0, 1]))) == 2


@pytest.mark.polytope
def test_bounded() -> None:
    assert Polytope.box([0, 0, 0], [1, 2, 3]).is_bounded()
    x, y = AffineForm.coordinate(2, 0), AffineForm.coordinate(2, 1)
    strip = Polytope(2, (x, -x + AffineForm.const(2, 1), y))
    assert not strip.is_bounded()
    assert moment_polytope(caterpillar(5), Fraction(7, 2)).is_bounded()
    assert vertices(Polytope.box([0, 0], [Fraction(1, 3), 1])) == [
        (0, 0),
        (0, 1),
        (Fraction(1, 3), 0),
        (Fraction(1, 3), 1),
    ]


@pytest.mark.polytope
def test_limits() -> None:
    P = moment_polytope(caterpillar(6), 6)
    with pytest.raises(ResourceLimitError):
        vertices(P, max_dim=4)
    with pytest.raises(ResourceLimitError):
        ehrhart_volume(P, max_dim=4)


# ## Moment polytopes


@pytest.mark.polytope
def test_frame() -> None:
    frame = CoordinateFrame(caterpillar(4), 4)
    assert frame.dim == 4
    assert frame.names() == ["u_e1", "u_e2", "u_e3", "u_d1"]
    assert length_form(frame, Side(4, 4))([2, 2, 2, 1]) == 1
    with pytest.raises(InvalidArgumentError):
        CoordinateFrame(caterpillar(4), 0)


@pytest.mark.polytope
def test_fixed_point_image() -> None:
    assert predicted_vertices(caterpillar(4))[0] == (4, 4, 0, 4)


@pytest.mark.polytope
@pytest.mark.parametrize("n", [4, 5])
def test_vertices_are_fixed_points(n: int) -> None:
    for T in enumerate_triangulations(n):
        verts = vertices(moment_polytope(T, n))
        assert len(verts) == n * (n - 1) // 2
        assert set(verts) == set(predicted_vertices(T))


@pytest.mark.polytope
@pytest.mark.parametrize("n, perimeter", [(4, 4), (4, 5), (5, 5), (5, 6)])
def test_lattice_invariance(n: int, perimeter: int) -> None:
    counts = {lattice_count(moment_polytope(T, perimeter)) for T in enumerate_triangulations(n)}
    assert len(counts) == 1


@pytest.mark.polytope
@pytest.mark.slow
@pytest.mark.parametrize("perimeter, count", [(6, 13860), (7, 32670)])
def test_lattice_invariance_hexagon(perimeter: int, count: int) -> None:
    counts = {lattice_count(moment_polytope(T, perimeter)) for T in enumerate_triangulations(6)}
    assert counts == {count}


@pytest.mark.polytope
@pytest.mark.parametrize("perimeter", [4, 5])
def test_volume_invariance_square(perimeter: int) -> None:
    vols = {ehrhart_volume(moment_polytope(T, perimeter)) for T in enumerate_triangulations(4)}
    assert len(vols) == 1
    assert vols.pop() > 0


@pytest.mark.polytope
@pytest.mark.slow
@pytest.mark.parametrize("perimeter", [5, 6])
def test_volume_invariance_pentagon(perimeter: int) -> None:
    vols = {ehrhart_volume(moment_polytope(T, perimeter)) for T in enumerate_triangulations(5)}
    assert len(vols) == 1


@pytest.mark.polytope
def test_reflexive_square() -> None:
    ok, shift = reflexivity_check(caterpillar(4), 4)
    assert ok
    assert shift == (2, 2, 2, 1)


@pytest.mark.polytope
@given(triangulations())
def test_reflexive(T: Triangulation) -> None:
    ok, shift = reflexivity_check(T)
    assert ok
    assert shift == reflexive_shift(T)
    assert interior_lattice_points(moment_polytope(T, T.n)) == [shift]


# ## Bending polytopes


@pytest.mark.polytope
def test_rectangle() -> None:
    P = bending_polytope(RECTANGLE, side_lengths["rectangle"]).irredundant()
    assert vertices(P) == [(3, 2), (3, 6), (5, 2), (5, 6)]
    assert ehrhart_volume(P) == 8


@pytest.mark.polytope
def test_trapezoid() -> None:
    P = bending_polytope(caterpillar(5), side_lengths["rectangle"]).irredundant()
    assert vertices(P) == [(1, 3), (1, 5), (3, 1), (3, 7)]
    assert ehrhart_volume(P) == 8
    assert lattice_count(P) == lattice_count(bending_polytope(RECTANGLE, side_lengths["rectangle"]))


@pytest.mark.polytope
def test_heptagon() -> None:
    P = bending_polytope(caterpillar(5), side_lengths["heptagon"]).irredundant()
    assert len(P.halfspaces) == 7
    assert len(vertices(P)) == 7


@pytest.mark.polytope
@pytest.mark.parametrize("r", [(1, 1, 5), (1, 2, 3), (0, 2, 2)])
def test_empty_space(r: tuple) -> None:
    with pytest.raises(EmptySpaceError):
        bending_polytope(caterpillar(3), r)


@pytest.mark.polytope
def test_slice_point() -> None:
    r = side_lengths["rectangle"]
    P = moment_polytope(RECTANGLE, sum(r))
    for x in vertices(bending_polytope(RECTANGLE, r)):
        assert P.contains(slice_point(RECTANGLE, r, x))


def _lengths(n: int) -> tuple:
    return tuple(Fraction(i + 2, 2) for i in range(n))


@pytest.mark.polytope
@pytest.mark.parametrize("n", [4, 5, 6])
def test_slice_membership(n: int) -> None:
    "A point lies in the bending polytope iff its frame point lies in the moment polytope"
    r = _lengths(n)
    for T in enumerate_triangulations(n):
        bending = bending_polytope(T, r)
        moment = moment_polytope(T, sum(r))
        for v in vertices(bending):
            assert moment.contains(slice_point(T, r, v))
            for i in range(len(v)):
                for step in (Fraction(-1, 2), Fraction(1, 2), 1):
                    x = list(v)
                    x[i] += step
                    assert bending.contains(x) == moment.contains(slice_point(T, r, x))


@pytest.mark.polytope
@given(triangulations(), data())
def test_slice_membership_sampled(T: Triangulation, draw: DataObject) -> None:
    r = _lengths(T.n)
    x = draw.draw(
        lists(
            fractions(min_value=-1, max_value=2 * T.n, max_denominator=4),
            min_size=T.n - 3,
            max_size=T.n - 3,
        )
    )
    bending = bending_polytope(T, r)
    moment = moment_polytope(T, sum(r))
    assert bending.contains(x) == moment.contains(slice_point(T, r, x))
