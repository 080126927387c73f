"""
Potential functions of triangulations, the geometric lifts of Whitehead
moves, and tropicalization back to piecewise-linear maps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import operators
from .combinatorics import (
    Diagonal,
    Edge,
    Side,
    Triangulation,
    WhiteheadMove,
    flip_path,
    triangles,
)
from .errors import InvalidArgumentError, NotFoundError, NotSubtractionFreeError
from .laurent import (
    Exponent,
    LaurentPoly,
    RationalExpr,
    VariableSpace,
    add_exp,
    format_monomial,
    neg_exp,
    rational_equal,
    sub_exp,
    substitute_rational,
)
from .operators import Rational
from .polytope import AffineForm, CoordinateFrame, lattice_points, moment_polytope
from .report import Report
from .tropical import PLMap, TropExpr, whitehead_plmap

logger = logging.getLogger(__name__)


def edge_monomial(T: Triangulation, a: Edge) -> Exponent:
    """
    Doubled exponent of $y(a)$.

    $y(e_i) = y_{e_i}^{1/2}$, $y(e_n) = Q (y_{e_1} \\cdots y_{e_{n-1}})^{-1/2}$ and
    $y(d_\\alpha) = y_{d_\\alpha}^{-1} \\prod_{i \\in I_\\alpha} y_{e_i}^{1/2}$.

    Args:
        T: triangulation
        a: a side or one of its diagonals

    Returns:
        Exponent vector in doubled storage.
    """
    space = VariableSpace(T.n)
    e = [0] * space.size
    if isinstance(a, Side):
        if a.n != T.n:
            raise NotFoundError(f"{a} is not a side of the {T.n}-gon")
        if a.index < T.n:
            e[space.side(a.index)] = 1
        else:
            e[space.q] = 2
            for i in range(1, T.n):
                e[space.side(i)] = -1
    elif isinstance(a, Diagonal):
        e[space.diagonal(T.index(a))] = -2
        for i in a.arc:
            e[space.side(i)] = 1
    else:
        raise NotFoundError(f"unknown edge label {a!r}")
    return space.check(tuple(e))


def potential(T: Triangulation) -> LaurentPoly:
    """
    $\\sum_{\\text{triangles}} \\frac{y(b) y(c)}{y(a)} + \\frac{y(a) y(c)}{y(b)} + \\frac{y(a) y(b)}{y(c)}$

    Args:
        T: triangulation

    Returns:
        The potential function as a Laurent polynomial.
    """
    space = VariableSpace(T.n)
    out = LaurentPoly(space)
    for t in triangles(T):
        ya, yb, yc = (edge_monomial(T, e) for e in t.edges)
        for top1, top2, bottom in ((yb, yc, ya), (ya, yc, yb), (ya, yb, yc)):
            out = out + LaurentPoly.monomial(space, sub_exp(add_exp(top1, top2), bottom))
    return out


@dataclass(frozen=True)
class LiftRule:
    """
    The geometric lift of a Whitehead move,
    $y(d') = y(d) \\frac{y(a_1) y(a_4) + y(a_2) y(a_3)}{y(a_1) y(a_2) + y(a_3) y(a_4)}$.

    Both diagonals use the variable of the same slot `var`.

    Attributes:
        move : the move
        var : variable index of the slot
        pullback : source $y_d$ in target variables
        pushforward : target $y_{d'}$ in source variables
    """

    move: WhiteheadMove
    var: int
    pullback: RationalExpr
    pushforward: RationalExpr


def geometric_lift(move: WhiteheadMove, T_source: Triangulation) -> LiftRule:
    """
    Solve the lift relation for the diagonal variables.

    Args:
        move: a move of `T_source`
        T_source: source triangulation

    Returns:
        The rule in both directions.
    """
    if T_source.index(move.removed) != move.slot:
        raise InvalidArgumentError(f"move {move} does not belong to {T_source!r}")
    space = VariableSpace(T_source.n)
    var = space.diagonal(move.slot)
    y = [edge_monomial(T_source, a) for a in move.quad]

    def mono(*es: Exponent) -> LaurentPoly:
        total = space.zero()
        for e in es:
            total = add_exp(total, e)
        return LaurentPoly.monomial(space, total)

    numer = mono(y[0], y[3]) + mono(y[1], y[2])
    denom = mono(y[0], y[1]) + mono(y[2], y[3])
    # M_d = y(d) * y_d, the side part of y(d)
    m_removed = [0] * space.size
    for i in move.removed.arc:
        m_removed[space.side(i)] = 1
    m_inserted = [0] * space.size
    for i in move.inserted.arc:
        m_inserted[space.side(i)] = 1
    y_slot = LaurentPoly.variable(space, var)
    ratio = mono(tuple(m_removed), neg_exp(tuple(m_inserted)))
    pullback = RationalExpr(y_slot * ratio * numer, denom).normalized()
    pushforward = RationalExpr(y_slot * denom, ratio * numer).normalized()
    return LiftRule(move, var, pullback, pushforward)


def lift_path(T1: Triangulation, T2: Triangulation) -> List[LiftRule]:
    "Lift rules along a shortest flip path."
    rules = []
    current = T1
    for move in flip_path(T1, T2):
        rules.append(geometric_lift(move, current))
        current = current.replace(move.removed, move.inserted)
    return rules


def lift_verify(T1: Triangulation, T2: Triangulation) -> Report:
    """
    Substitute the lifts along a flip path into the potential of `T1` and
    compare with the potential of `T2`.

    Args:
        T1: source triangulation
        T2: target triangulation

    Returns:
        Report with the check `potential` and term counts per step.
    """
    if T1.n != T2.n:
        raise InvalidArgumentError(f"size mismatch: {T1.n} vs {T2.n}")
    report = Report()
    expr = RationalExpr.of(potential(T1))
    current = T1
    sizes = [len(expr.num)]
    for rule in lift_path(T1, T2):
        expr = substitute_rational(expr, rule.var, rule.pullback)
        current = current.replace(rule.move.removed, rule.move.inserted)
        sizes.append(len(expr.num))
    target = RationalExpr.of(potential(current))
    ok = rational_equal(expr, target)
    report.counts["steps"] = len(sizes) - 1
    report.counts["terms"] = sizes
    report.add_check(
        "potential",
        ok,
        f"{len(sizes) - 1} lift(s), {len(target.num)} target terms",
        witness=None if ok else str(expr),
    )
    logger.debug("lift verification %r -> %r: %s", T1, T2, ok)
    return report


def _monomial_form(space: VariableSpace, e: Exponent, perimeter: Fraction) -> AffineForm:
    # y^v Q^q -> <v/2, u> + (q/2)|r| over frame coordinates
    coeffs = [Fraction(x, 2) for x in e[: space.q]]
    return AffineForm.make(coeffs, Fraction(e[space.q], 2) * perimeter)


def _tropicalize_poly(p: LaurentPoly, perimeter: Fraction) -> TropExpr:
    if p.is_zero():
        raise NotSubtractionFreeError("tropicalization of zero")
    if not p.subtraction_free():
        raise NotSubtractionFreeError("tropicalization needs positive coefficients")
    forms = [TropExpr.affine(_monomial_form(p.space, e, perimeter)) for e, _ in p.monomials()]
    return TropExpr.min_of(*forms)


def tropicalize(r: RationalExpr, perimeter: Rational) -> TropExpr:
    """
    Valuation of a subtraction-free quotient: monomials become affine forms,
    sums become `min`, the quotient becomes a difference.

    Args:
        r: subtraction-free expression
        perimeter: value of $|r|$ standing for $Q$

    Returns:
        Expression over frame coordinates.
    """
    c = operators.rational(perimeter)
    return _tropicalize_poly(r.num, c) - _tropicalize_poly(r.den, c)


def tropical_lift_map(rule: LiftRule, perimeter: Rational) -> PLMap:
    "The pushforward of a lift, tropicalized, as a map on frame coordinates."
    space = rule.pullback.space
    N = space.size - 1
    coords = [TropExpr.coordinate(N, i) for i in range(N)]
    coords[rule.var] = tropicalize(rule.pushforward, perimeter)
    return PLMap(N, tuple(coords))


def tropical_check(
    T: Triangulation, move: WhiteheadMove, perimeter: Optional[Rational] = None
) -> Report:
    """
    Compare the tropicalized lift with the Whitehead map on every lattice
    point of the source moment polytope.

    Args:
        T: source triangulation
        move: one of its moves
        perimeter: $|r|$, defaults to $n$

    Returns:
        Report with the check `agree`.
    """
    c = Fraction(T.n) if perimeter is None else operators.rational(perimeter)
    frame = CoordinateFrame(T, c)
    pl = whitehead_plmap(frame, move)
    trop = tropical_lift_map(geometric_lift(move, T), c)
    points = lattice_points(moment_polytope(T, c))
    witness = next((p for p in points if pl(p) != trop(p)), None)
    report = Report()
    report.counts["points"] = len(points)
    report.add_check("agree", witness is None, f"{len(points)} lattice points", witness=witness)
    return report


def potential_terms(p: LaurentPoly) -> Sequence[str]:
    "Rendered monomials in canonical order."
    return [format_monomial(p.space, e, c) for e, c in p.monomials()]
