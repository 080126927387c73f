"""
Sparse Laurent polynomials in $y_{e_1}, \\ldots, y_{e_{n-1}}, y_{d_1},
\\ldots, y_{d_{n-3}}, Q$ and quotients of them.

Exponents are stored doubled, so that $y_{e_i}^{1/2}$ has the integer
exponent 1. Diagonal exponents are always even.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import operators
from .errors import InvalidArgumentError, InvariantViolation
from .operators import Rational, fmt_rational

Exponent = Tuple[int, ...]


@dataclass(frozen=True)
class VariableSpace:
    """
    Names and positions of the variables for an n-gon.

    Order: $y_{e_1}, \\ldots, y_{e_{n-1}}, y_{d_1}, \\ldots, y_{d_{n-3}}, Q$.
    """

    n: int

    @property
    def size(self) -> int:
        return 2 * self.n - 3

    @property
    def names(self) -> Tuple[str, ...]:
        sides = tuple(f"y_e{i}" for i in range(1, self.n))
        diags = tuple(f"y_d{a}" for a in range(1, self.n - 2))
        return sides + diags + ("Q",)

    def side(self, i: int) -> int:
        if not 1 <= i < self.n:
            raise InvalidArgumentError(f"no variable for e{i}")
        return i - 1

    def diagonal(self, slot: int) -> int:
        "Index of $y_{d_\\alpha}$ for the 0-based slot $\\alpha - 1$."
        if not 0 <= slot < self.n - 3:
            raise InvalidArgumentError(f"no diagonal slot {slot}")
        return self.n - 1 + slot

    @property
    def q(self) -> int:
        return self.size - 1

    def is_diagonal(self, index: int) -> bool:
        return self.n - 1 <= index < self.size - 1

    def zero(self) -> Exponent:
        return (0,) * self.size

    def check(self, e: Exponent) -> Exponent:
        if len(e) != self.size:
            raise InvalidArgumentError(f"exponent of length {len(e)} in a space of size {self.size}")
        for i in range(self.n - 1, self.size - 1):
            if e[i] % 2:
                raise InvariantViolation(f"odd doubled exponent on {self.names[i]}")
        return e


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(operators.addLists(a, b))


def neg_exp(a: Exponent) -> Exponent:
    return tuple(operators.negList(a))


def sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return add_exp(a, neg_exp(b))


class LaurentPoly:
    """
    Sparse map from doubled exponent vectors to nonzero rational
    coefficients.
    """

    space: VariableSpace
    terms: Dict[Exponent, Fraction]

    def __init__(self, space: VariableSpace, terms: Optional[Mapping[Exponent, Rational]] = None):
        self.space = space
        self.terms = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[space.check(tuple(e))] = c

    @classmethod
    def monomial(cls, space: VariableSpace, e: Exponent, c: Rational = 1) -> LaurentPoly:
        return cls(space, {e: c})

    @classmethod
    def constant(cls, space: VariableSpace, c: Rational) -> LaurentPoly:
        return cls(space, {space.zero(): c})

    @classmethod
    def variable(cls, space: VariableSpace, index: int) -> LaurentPoly:
        "The variable at `index` (exponent 2 in doubled storage)."
        e = [0] * space.size
        e[index] = 2
        return cls(space, {tuple(e): 1})

    def _same(self, other: LaurentPoly) -> None:
        if other.space != self.space:
            raise InvalidArgumentError("polynomials over different variable spaces")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(self.space, out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: Any) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            c = operators.rational(other)
            return LaurentPoly(self.space, {e: c * v for e, v in self.terms.items()})
        self._same(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_exp(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.space, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise InvalidArgumentError("negative power of a non-monomial")
            ((e, c),) = self.terms.items()
            return LaurentPoly.monomial(self.space, tuple(-k * x for x in e), Fraction(1) / c**-k)
        out = LaurentPoly.constant(self.space, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, e: Exponent) -> LaurentPoly:
        "Multiply by the monomial $y^e$."
        return LaurentPoly(self.space, {add_exp(x, e): c for x, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> List[Tuple[Exponent, Fraction]]:
        "Terms in lexicographic order of exponent vectors."
        return sorted(self.terms.items())

    def subtraction_free(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def content(self) -> Exponent:
        "Componentwise minimum exponent."
        if not self.terms:
            return self.space.zero()
        return tuple(min(col) for col in zip(*self.terms))

    def degree_in(self, index: int) -> Tuple[int, int]:
        "(min, max) doubled exponent of one variable."
        col = [e[index] for e in self.terms]
        return min(col), max(col)

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"coef": fmt_rational(c), "exp": [fmt_rational(Fraction(x, 2)) for x in e]}
            for e, c in self.monomials()
        ]

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)})"


def _power(name: str, k: int) -> str:
    if k == 2:
        return name
    return f"{name}^{{{fmt_rational(Fraction(k, 2))}}}"


def format_monomial(space: VariableSpace, e: Exponent, c: Rational = 1) -> str:
    "`coef * y_e1^{1/2} * ... * Q`; the coefficient is left out when it is 1."
    factors = [_power(name, k) for name, k in zip(space.names, e) if k]
    c = Fraction(c)
    if not factors:
        return fmt_rational(c)
    if c == 1:
        return " * ".join(factors)
    if c == -1:
        return "-" + " * ".join(factors)
    return " * ".join([fmt_rational(c)] + factors)


def format_poly(p: LaurentPoly) -> str:
    """
    Render as `coef * y_e1^{a/2} ... Q^{c/2}` terms joined by ` + `.

    Args:
        p: polynomial

    Returns:
        Text form, `0` for the zero polynomial.
    """
    if p.is_zero():
        return "0"
    return " + ".join(format_monomial(p.space, e, c) for e, c in p.monomials())


@dataclass(frozen=True)
class RationalExpr:
    """
    A quotient of Laurent polynomials. Equality is cross-multiplication
    equality (see `rational_equal`), not structural.
    """

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self) -> None:
        if self.den.is_zero():
            raise InvalidArgumentError("zero denominator")
        if self.num.space != self.den.space:
            raise InvalidArgumentError("numerator and denominator over different spaces")

    @classmethod
    def of(cls, p: LaurentPoly) -> RationalExpr:
        return cls(p, LaurentPoly.constant(p.space, 1))

    @property
    def space(self) -> VariableSpace:
        return self.num.space

    @property
    def subtraction_free(self) -> bool:
        return self.num.subtraction_free() and self.den.subtraction_free()

    def __mul__(self, other: RationalExpr) -> RationalExpr:
        return RationalExpr(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalExpr) -> RationalExpr:
        if other.num.is_zero():
            raise InvalidArgumentError("division by zero")
        return RationalExpr(self.num * other.den, self.den * other.num)

    def __add__(self, other: RationalExpr) -> RationalExpr:
        return RationalExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    def normalized(self) -> RationalExpr:
        """
        Divide out the common monomial content so numerator and denominator
        are polynomials with no common monomial factor.
        """
        terms = list(self.num.terms) + list(self.den.terms)
        m = tuple(min(col) for col in zip(*terms)) if terms else self.space.zero()
        # keep diagonal exponents even
        m = tuple(x - (x % 2) if self.space.is_diagonal(i) else x for i, x in enumerate(m))
        shift = neg_exp(m)
        return RationalExpr(self.num.shift(shift), self.den.shift(shift))

    def to_json(self) -> Dict[str, Any]:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __str__(self) -> str:
        if self.den == LaurentPoly.constant(self.space, 1):
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


def rational_equal(r1: RationalExpr, r2: RationalExpr) -> bool:
    "True iff $num_1 \\cdot den_2 = num_2 \\cdot den_1$."
    return r1.num * r2.den == r2.num * r1.den


def substitute(p: LaurentPoly, var: int, rule: RationalExpr) -> RationalExpr:
    """
    Replace the variable at index `var` by `rule`.

    Every term $c \\cdot m \\cdot y^k$ becomes $c \\cdot m \\cdot N^{k - lo} D^{hi - k}$
    over the common denominator $N^{-lo} D^{hi}$, where $rule = N/D$ and
    $lo \\leq 0 \\leq hi$ bound the exponents $k$.

    Args:
        p: polynomial
        var: index of the substituted variable (a diagonal or $Q$)
        rule: the replacement

    Returns:
        The substituted quotient.
    """
    space = p.space
    if rule.space != space:
        raise InvalidArgumentError("rule over a different variable space")
    if p.is_zero():
        return RationalExpr.of(p)
    split: List[Tuple[Exponent, Fraction, int]] = []
    for e, c in p.terms.items():
        if e[var] % 2:
            raise InvariantViolation(f"half power of {space.names[var]} cannot be substituted")
        rest = list(e)
        rest[var] = 0
        split.append((tuple(rest), c, e[var] // 2))
    ks = [k for _, _, k in split]
    lo, hi = min(0, min(ks)), max(0, max(ks))
    N, D = rule.num, rule.den
    num = LaurentPoly(space)
    for rest, c, k in split:
        num = num + LaurentPoly.monomial(space, rest, c) * N ** (k - lo) * D ** (hi - k)
    den = N ** (-lo) * D**hi
    return RationalExpr(num, den)


def substitute_rational(r: RationalExpr, var: int, rule: RationalExpr) -> RationalExpr:
    "`substitute` applied to numerator and denominator, normalized."
    return (substitute(r.num, var, rule) / substitute(r.den, var, rule)).normalized()


def poly_from_terms(space: VariableSpace, terms: Iterable[Tuple[Sequence[int], Rational]]) -> LaurentPoly:
    "Build from (doubled exponent, coefficient) pairs, merging repeats."
    out = LaurentPoly(space)
    for e, c in terms:
        out = out + LaurentPoly.monomial(space, tuple(e), c)
    return out
