from fractions import Fraction
from typing import List

import pytest
from hypothesis import given
from hypothesis.strategies import lists

from polygonal.errors import InvalidArgumentError
from polygonal.operators import (
    add,
    addLists,
    common_denominator,
    dot,
    fmt_rational,
    is_integral,
    maximum,
    minimum,
    mul,
    neg,
    negList,
    rational,
    scaleList,
    sum,
)

from .strategies import small_rationals

# ## Exact rational prelude


@pytest.mark.combinatorics
@given(small_rationals, small_rationals)
def test_same_as_python(x: Fraction, y: Fraction) -> None:
    "Check that the main operators all return the same value of the python version"
    assert mul(x, y) == x * y
    assert add(x, y) == x + y
    assert neg(x) == -x
    assert minimum(x, y) == min(x, y)
    assert maximum(x, y) == max(x, y)


@pytest.mark.combinatorics
@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("11/10", Fraction(11, 10)), (" -7/2 ", Fraction(-7, 2)), (4, Fraction(4))],
)
def test_rational_parse(text: str, value: Fraction) -> None:
    assert rational(text) == value


@pytest.mark.combinatorics
@pytest.mark.parametrize("bad", ["x", "1/0.5/2", 0.5, True, None])
def test_rational_rejects(bad: object) -> None:
    with pytest.raises(InvalidArgumentError):
        rational(bad)  # type: ignore


@pytest.mark.combinatorics
@given(small_rationals)
def test_fmt_rational(x: Fraction) -> None:
    text = fmt_rational(x)
    assert Fraction(text) == x
    assert ("/" in text) == (not is_integral(x))


@pytest.mark.combinatorics
def test_minimum_empty() -> None:
    with pytest.raises(InvalidArgumentError):
        minimum()


@pytest.mark.combinatorics
@given(lists(small_rationals), lists(small_rationals))
def test_sum_distribute(ls1: List[Fraction], ls2: List[Fraction]) -> None:
    "Sum of the pairwise sums equals the sum of both sums"
    k = min(len(ls1), len(ls2))
    ls1, ls2 = ls1[:k], ls2[:k]
    assert sum(addLists(ls1, ls2)) == sum(ls1) + sum(ls2)


@pytest.mark.combinatorics
@given(lists(small_rationals))
def test_neg_and_scale(ls: List[Fraction]) -> None:
    assert negList(ls) == scaleList(-1, ls)
    assert sum(negList(ls)) == -sum(ls)


@pytest.mark.combinatorics
def test_add_lists_mismatch() -> None:
    with pytest.raises(InvalidArgumentError):
        addLists([1, 2], [1])


@pytest.mark.combinatorics
def test_dot_and_denominator() -> None:
    assert dot([1, 2, 3], [Fraction(1, 2), 0, 2]) == Fraction(13, 2)
    assert common_denominator([Fraction(1, 2), Fraction(2, 3), 5]) == 6
