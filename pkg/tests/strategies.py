from fractions import Fraction

from hypothesis import settings
from hypothesis.strategies import (
    SearchStrategy,
    composite,
    fractions,
    integers,
    sampled_from,
)

import polygonal

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")


small_rationals = fractions(min_value=-20, max_value=20, max_denominator=6)
positive_rationals = fractions(min_value=Fraction(1, 6), max_value=10, max_denominator=6)
small_sizes = integers(min_value=4, max_value=6)


@composite
def triangulations(draw, sizes: SearchStrategy = small_sizes) -> polygonal.Triangulation:  # type: ignore
    n = draw(sizes)
    return draw(sampled_from(polygonal.enumerate_triangulations(n)))


@composite
def moves(draw, sizes: SearchStrategy = small_sizes):  # type: ignore
    "A triangulation together with one of its Whitehead moves."
    T = draw(triangulations(sizes))
    d = draw(sampled_from(T.diagonals))
    T2, move = polygonal.whitehead_move(T, d)
    return T, T2, move
