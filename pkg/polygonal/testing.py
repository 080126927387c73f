from typing import Any, Callable, Generic, List, Tuple, TypeVar

from . import operators
from .tropical import min_identity, range_lengths

A = TypeVar("A")
Pair = Tuple[Any, Any]


class IdentityTest(Generic[A]):
    """
    Min-plus identities written once for any number type supporting `+`,
    `-` and `operators.minimum`. Each returns its two sides.
    """

    @staticmethod
    def min_commute2(a: A, b: A) -> Pair:
        "Min is symmetric"
        return operators.minimum(a, b), operators.minimum(b, a)

    @staticmethod
    def min_shift2(a: A, b: A) -> Pair:
        "Adding a constant commutes with min"
        return operators.minimum(a, b) + 3, operators.minimum(a + 3, b + 3)

    @staticmethod
    def max_min2(a: A, b: A) -> Pair:
        return operators.maximum(a, b) + operators.minimum(a, b), a + b

    @staticmethod
    def neg_max2(a: A, b: A) -> Pair:
        return -operators.maximum(a, b), operators.minimum(-a, -b)

    @staticmethod
    def abs_min2(a: A, b: A) -> Pair:
        "The lemma behind the Whitehead formula"
        return min_identity(a, b)

    @staticmethod
    def min_distribute4(a: A, b: A, c: A, d: A) -> Pair:
        "Addition distributes over min"
        lhs = operators.minimum(a, b) + operators.minimum(c, d)
        return lhs, operators.minimum(a + c, a + d, b + c, b + d)

    @staticmethod
    def range_length4(a: A, b: A, c: A, d: A) -> Pair:
        "Both diagonals of a quadrilateral have ranges of the same length"
        return range_lengths(a, b, c, d)

    @classmethod
    def _tests(
        cls,
    ) -> Tuple[List[Tuple[str, Callable[..., Pair]]], List[Tuple[str, Callable[..., Pair]]]]:
        """
        Returns the two- and four-argument identities.
        """
        two_arg = []
        four_arg = []
        for k in dir(IdentityTest):
            if callable(getattr(IdentityTest, k)) and not k.startswith("_"):
                tup = (k, getattr(cls, k))
                if k.endswith("2"):
                    two_arg.append(tup)
                elif k.endswith("4"):
                    four_arg.append(tup)
        return two_arg, four_arg
