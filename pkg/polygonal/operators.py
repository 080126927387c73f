"""
Collection of the exact rational operators used throughout the code base.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Iterable, List, Sequence, TypeVar, Union

from .errors import InvalidArgumentError

Rational = Union[int, Fraction]
A = TypeVar("A")


def rational(x: Union[int, str, Fraction]) -> Fraction:
    """
    Parse an exact rational.

    Args:
        x: int, Fraction, or a string "p/q" / "p"

    Returns:
        The value as a `Fraction`.
    """
    if isinstance(x, bool) or isinstance(x, float):
        raise InvalidArgumentError(f"expected an exact rational, got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as err:
            raise InvalidArgumentError(f"cannot parse rational {x!r}") from err
    raise InvalidArgumentError(f"expected an exact rational, got {x!r}")


def fmt_rational(x: Rational) -> str:
    "Render a rational as 'p/q', or 'p' when integral."
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_integral(x: Rational) -> bool:
    "True if x is an integer."
    return Fraction(x).denominator == 1


def add(x: A, y: A) -> A:
    "$f(x, y) = x + y$"
    return x + y  # type: ignore


def neg(x: A) -> A:
    "$f(x) = -x$"
    return -x  # type: ignore


def mul(x: A, y: A) -> A:
    "$f(x, y) = x * y$"
    return x * y  # type: ignore


def minimum(*xs: Any) -> Any:
    """
    $f(x_1, \\ldots, x_k) = \\min(x_1, \\ldots, x_k)$

    Works on plain rationals and on any value exposing a `min_of`
    constructor (piecewise-linear expressions build a `min` node).
    """
    if not xs:
        raise InvalidArgumentError("minimum of an empty sequence")
    for x in xs:
        if hasattr(x, "min_of"):
            return type(x).min_of(*xs)
    return min(xs)


def maximum(*xs: Any) -> Any:
    "$\\max(x_1, \\ldots, x_k) = -\\min(-x_1, \\ldots, -x_k)$"
    return neg(minimum(*[neg(x) for x in xs]))


def common_denominator(values: Iterable[Rational]) -> int:
    "Least common multiple of the denominators."
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


# Higher-order helpers.


def map(fn: Callable[[A], A]) -> Callable[[Iterable[A]], List[A]]:
    """
    Higher-order map.

    Args:
        fn: Function from one value to one value.

    Returns:
        A function that takes a list, applies `fn` to each element, and returns a
         new list
    """

    def _map(ls: Iterable[A]) -> List[A]:
        return [fn(x) for x in ls]

    return _map


def zipWith(fn: Callable[[A, A], A]) -> Callable[[Sequence[A], Sequence[A]], List[A]]:
    """
    Higher-order zipwith.

    Args:
        fn: combine two values

    Returns:
        Function that takes two equally sized lists `ls1` and `ls2`, produce a new list by
         applying fn(x, y) on each pair of elements.
    """

    def _zip(ls1: Sequence[A], ls2: Sequence[A]) -> List[A]:
        if len(ls1) != len(ls2):
            raise InvalidArgumentError(
                f"length mismatch: {len(ls1)} vs {len(ls2)}"
            )
        return [fn(x, y) for x, y in zip(ls1, ls2)]

    return _zip


def reduce(fn: Callable[[A, A], A], start: A) -> Callable[[Iterable[A]], A]:
    r"""
    Higher-order reduce.

    Args:
        fn: combine two values
        start: start value $x_0$

    Returns:
        Function that takes a list `ls` of elements
         $x_1 \ldots x_n$ and computes the reduction $fn(x_n, \ldots fn(x_1, x_0))$
    """

    def _reduce(ls: Iterable[A]) -> A:
        out = start
        for x in ls:
            out = fn(x, out)
        return out

    return _reduce


def addLists(ls1: Sequence[A], ls2: Sequence[A]) -> List[A]:
    "Add the elements of `ls1` and `ls2` using `zipWith` and `add`"
    return zipWith(add)(ls1, ls2)


def negList(ls: Iterable[A]) -> List[A]:
    "Use `map` and `neg` to negate each element in `ls`"
    return map(neg)(ls)


def scaleList(c: Rational, ls: Iterable[Rational]) -> List[Fraction]:
    "Multiply every element by `c`."
    return [Fraction(c) * x for x in ls]


def sum(ls: Iterable[Fraction]) -> Fraction:
    "Exact sum using `reduce` and `add`."
    return reduce(add, Fraction(0))(ls)


def dot(ls1: Sequence[Rational], ls2: Sequence[Rational]) -> Fraction:
    "Exact inner product."
    return sum(zipWith(mul)(list(ls1), list(ls2)))  # type: ignore
