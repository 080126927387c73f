"""
Named triangulations and side-length vectors, and the parser for the
triangulation specs accepted on the command line.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .combinatorics import Triangulation, apply_flip_word, caterpillar
from .errors import InvalidArgumentError
from .operators import rational


def pentagon_rectangle(n: int) -> Triangulation:
    _need(n, 5, "pentagon-rectangle")
    return Triangulation.from_arcs(5, [(2, 3), (2, 3, 4)])


def pentagon_hirzebruch(n: int) -> Triangulation:
    _need(n, 5, "pentagon-hirzebruch")
    return caterpillar(5)


def _need(n: int, size: int, name: str) -> None:
    if n != size:
        raise InvalidArgumentError(f"{name} is a {size}-gon triangulation, got n={n}")


triangulations: Dict[str, Callable[[int], Triangulation]] = {
    "caterpillar": caterpillar,
    "pentagon-rectangle": pentagon_rectangle,
    "pentagon-hirzebruch": pentagon_hirzebruch,
}

side_lengths: Dict[str, Tuple[Fraction, ...]] = {
    "heptagon": (Fraction(1), Fraction(11, 10), Fraction(6, 5), Fraction(13, 10), Fraction(7, 5)),
    "rectangle": (Fraction(2), Fraction(1), Fraction(4), Fraction(4), Fraction(4)),
}


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as err:
        raise InvalidArgumentError(f"cannot parse index list {text!r}") from err


def parse_triangulation(spec: str, n: int) -> Triangulation:
    """
    Parse a triangulation spec.

    Accepted forms: a name from `triangulations`; arc lists separated by
    `;` such as `2,3;2,3,4`; a flip word `flip:1,2` applied to the
    caterpillar.

    Args:
        spec: the text
        n: polygon size

    Returns:
        The triangulation, slots in the order given.
    """
    text = spec.strip()
    if text in triangulations:
        return triangulations[text](n)
    if text.startswith("flip:"):
        return apply_flip_word(caterpillar(n), _ints(text[len("flip:"):]))
    if n == 3 and text in ("", "-"):
        return Triangulation(3, ())
    arcs = [_ints(a) for a in text.split(";") if a.strip()]
    if not arcs:
        raise InvalidArgumentError(f"empty triangulation spec {spec!r}")
    return Triangulation.from_arcs(n, arcs)


def parse_side_lengths(spec: Optional[str], n: int) -> Tuple[Fraction, ...]:
    """
    Parse side lengths: a name from `side_lengths` or `p/q` values separated
    by commas. The bending system uses the first $n$ entries.

    Args:
        spec: the text, None for all ones
        n: polygon size

    Returns:
        Exactly $n$ rationals.
    """
    if spec is None:
        return tuple(Fraction(1) for _ in range(n))
    text = spec.strip()
    if text in side_lengths:
        r = side_lengths[text]
    else:
        r = tuple(rational(x) for x in text.split(",") if x.strip())
    if len(r) != n:
        raise InvalidArgumentError(f"expected {n} side lengths, got {len(r)}")
    return r
