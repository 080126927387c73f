"""
Piecewise-linear expressions built from affine forms with `+`, scaling and
`min`, and the integral piecewise-linear maps between moment polytopes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from typing_extensions import Protocol

from . import operators
from .combinatorics import (
    Edge,
    Side,
    Triangulation,
    WhiteheadMove,
    flip_path,
    reverse_move,
)
from .errors import InvalidArgumentError
from .operators import Rational, fmt_rational
from .polytope import (
    AffineForm,
    CoordinateFrame,
    Point,
    Polytope,
    arc_form,
    check_side_lengths,
    ehrhart_volume,
    lattice_points,
    length_form,
)
from .report import Report

logger = logging.getLogger(__name__)

ExprLike = Union[int, Fraction, "TropExpr"]


class Node(Protocol):
    @property
    def unique_id(self) -> int:
        pass

    def is_leaf(self) -> bool:
        pass

    @property
    def parents(self) -> Iterable["Node"]:
        pass


def topological_sort(roots: Sequence[Node]) -> List[Node]:
    """
    Computes the topological order of an expression graph.

    Args:
        roots: The output nodes

    Returns:
        Every node reachable from `roots`, each after its parents.
    """
    visited = set()
    order: List[Node] = []

    def visit(node: Node) -> None:
        if node.unique_id in visited:
            return
        visited.add(node.unique_id)
        for parent in node.parents:
            visit(parent)
        order.append(node)

    for r in roots:
        visit(r)
    return order


_expr_count = 0

OPS = ("affine", "sum", "scale", "min")


class TropExpr:
    """
    A node of a piecewise-linear expression graph.

    Leaves hold an `AffineForm`; inner nodes are `sum`, `scale` (by a
    rational) and `min` over their children. Nodes are immutable and may be
    shared, so composed maps stay graphs rather than trees.
    """

    op: str
    children: Tuple[TropExpr, ...]
    form: Optional[AffineForm]
    factor: Fraction
    unique_id: int

    def __init__(
        self,
        op: str,
        children: Sequence[TropExpr] = (),
        form: Optional[AffineForm] = None,
        factor: Rational = 1,
    ):
        global _expr_count
        if op not in OPS:
            raise InvalidArgumentError(f"unknown expression node {op!r}")
        _expr_count += 1
        self.unique_id = _expr_count
        self.op = op
        self.children = tuple(children)
        self.form = form
        self.factor = Fraction(factor)

    @classmethod
    def affine(cls, form: AffineForm) -> TropExpr:
        return cls("affine", form=form)

    @classmethod
    def constant(cls, dim: int, c: Rational) -> TropExpr:
        return cls.affine(AffineForm.const(dim, c))

    @classmethod
    def coordinate(cls, dim: int, i: int) -> TropExpr:
        return cls.affine(AffineForm.coordinate(dim, i))

    @classmethod
    def min_of(cls, *xs: ExprLike) -> TropExpr:
        "$\\min(x_1, \\ldots, x_k)$; plain rationals become constants."
        dim = next(x.dim for x in xs if isinstance(x, TropExpr))
        args = [cls._lift(dim, x) for x in xs]
        if len(args) == 1:
            return args[0]
        return cls("min", args)

    @staticmethod
    def _lift(dim: int, x: ExprLike) -> TropExpr:
        if isinstance(x, TropExpr):
            if x.dim != dim:
                raise InvalidArgumentError(f"dimension mismatch: {x.dim} vs {dim}")
            return x
        return TropExpr.constant(dim, operators.rational(x))

    @property
    def dim(self) -> int:
        if self.form is not None:
            return self.form.dim
        return self.children[0].dim

    @property
    def parents(self) -> Iterable[TropExpr]:
        return self.children

    def is_leaf(self) -> bool:
        return self.op == "affine"

    def __add__(self, b: ExprLike) -> TropExpr:
        return TropExpr("sum", (self, self._lift(self.dim, b)))

    def __radd__(self, b: ExprLike) -> TropExpr:
        return self._lift(self.dim, b) + self

    def __neg__(self) -> TropExpr:
        return self.scale(-1)

    def __sub__(self, b: ExprLike) -> TropExpr:
        return self + (-self._lift(self.dim, b))

    def __rsub__(self, b: ExprLike) -> TropExpr:
        return self._lift(self.dim, b) + (-self)

    def __mul__(self, c: Rational) -> TropExpr:
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c: Rational) -> TropExpr:
        return TropExpr("scale", (self,), factor=operators.rational(c))

    def __call__(self, point: Sequence[Rational]) -> Fraction:
        return evaluate([self], point)[0]

    def leaves(self) -> List[AffineForm]:
        return [
            n.form  # type: ignore
            for n in topological_sort([self])
            if isinstance(n, TropExpr) and n.is_leaf()
        ]

    def to_json(self) -> Dict[str, Any]:
        if self.op == "affine":
            assert self.form is not None
            return {
                "affine": {
                    "v": [fmt_rational(x) for x in self.form.coeffs],
                    "c": fmt_rational(self.form.constant),
                }
            }
        if self.op == "scale":
            return {"scale": fmt_rational(self.factor), "of": self.children[0].to_json()}
        return {self.op: [c.to_json() for c in self.children]}

    def __repr__(self) -> str:
        if self.op == "affine":
            return f"[{self.form}]"
        if self.op == "scale":
            return f"{fmt_rational(self.factor)}*{self.children[0]!r}"
        if self.op == "sum":
            return "(" + " + ".join(repr(c) for c in self.children) + ")"
        return "min(" + ", ".join(repr(c) for c in self.children) + ")"


def evaluate(exprs: Sequence[TropExpr], point: Sequence[Rational]) -> List[Fraction]:
    """
    Exact evaluation of several expressions sharing one memo.

    Args:
        exprs: expressions over the same coordinates
        point: rational point

    Returns:
        The values, in order.
    """
    values: Dict[int, Fraction] = {}
    for node in topological_sort(exprs):
        assert isinstance(node, TropExpr)
        if node.op == "affine":
            assert node.form is not None
            v = node.form(point)
        elif node.op == "sum":
            v = operators.sum(values[c.unique_id] for c in node.children)
        elif node.op == "scale":
            v = node.factor * values[node.children[0].unique_id]
        else:
            v = min(values[c.unique_id] for c in node.children)
        values[node.unique_id] = v
    return [values[e.unique_id] for e in exprs]


def substitute(exprs: Sequence[TropExpr], inner: Sequence[TropExpr]) -> List[TropExpr]:
    """
    Replace each coordinate $u_i$ by `inner[i]`.

    Args:
        exprs: outer expressions
        inner: one expression per coordinate

    Returns:
        The composed expressions; `inner` nodes are shared, not copied.
    """
    dim = len(inner)
    new: Dict[int, TropExpr] = {}
    for node in topological_sort(exprs):
        assert isinstance(node, TropExpr)
        if node.op == "affine":
            assert node.form is not None
            if node.form.dim != dim:
                raise InvalidArgumentError(f"dimension mismatch: {node.form.dim} vs {dim}")
            out = TropExpr.constant(inner[0].dim if inner else 0, node.form.constant)
            for c, e in zip(node.form.coeffs, inner):
                if c:
                    out = out + e.scale(c) if c != 1 else out + e
        elif node.op == "scale":
            out = new[node.children[0].unique_id].scale(node.factor)
        else:
            out = TropExpr(node.op, [new[c.unique_id] for c in node.children])
        new[node.unique_id] = out
    return [new[e.unique_id] for e in exprs]


@dataclass(frozen=True)
class PLMap:
    """
    A piecewise-linear map $\\mathbb{R}^N \\to \\mathbb{R}^N$, one expression
    per output coordinate.
    """

    dim: int
    coords: Tuple[TropExpr, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.dim:
            raise InvalidArgumentError(f"{len(self.coords)} coordinates for dimension {self.dim}")
        for e in self.coords:
            if e.dim != self.dim:
                raise InvalidArgumentError(f"expression of dimension {e.dim} in a map of dimension {self.dim}")

    @classmethod
    def identity(cls, dim: int) -> PLMap:
        return cls(dim, tuple(TropExpr.coordinate(dim, i) for i in range(dim)))

    def __call__(self, point: Sequence[Rational]) -> Point:
        return tuple(evaluate(self.coords, point))

    def compose(self, inner: PLMap) -> PLMap:
        "$self \\circ inner$"
        if inner.dim != self.dim:
            raise InvalidArgumentError(f"dimension mismatch: {self.dim} vs {inner.dim}")
        return PLMap(self.dim, tuple(substitute(self.coords, inner.coords)))

    def leaves(self) -> List[AffineForm]:
        return [
            n.form  # type: ignore
            for n in topological_sort(self.coords)
            if isinstance(n, TropExpr) and n.is_leaf()
        ]

    def to_json(self) -> Dict[str, Any]:
        return {"dim": self.dim, "coords": [e.to_json() for e in self.coords]}


def compose_plmaps(maps: Sequence[PLMap], dim: Optional[int] = None) -> PLMap:
    """
    Functional composition, right to left: `[f, g]` gives $f \\circ g$.

    Args:
        maps: maps of equal dimension
        dim: dimension of the identity returned for an empty list

    Returns:
        The composite.
    """
    if not maps:
        if dim is None:
            raise InvalidArgumentError("dimension needed for an empty composition")
        return PLMap.identity(dim)
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m.compose(out)
    return out


def _frame_move_forms(
    frame: CoordinateFrame, move: WhiteheadMove
) -> Tuple[List[AffineForm], List[AffineForm]]:
    # u(a) + v(a) and u(a) - v(a) for each quadrilateral side
    plus, minus = [], []
    for edge, arc in zip(move.quad, move.arcs):
        u = length_form(frame, edge)
        v = arc_form(frame, arc)
        plus.append(u + v)
        minus.append(u - v)
    return plus, minus


def whitehead_plmap(frame: CoordinateFrame, move: WhiteheadMove) -> PLMap:
    """
    The map $u' = u - \\min(u_1 + u_2, u_3 + u_4) + \\min(u_1 + u_4, u_2 + u_3)$
    in frame coordinates.

    With $v(a) = \\sum_{i \\in I_a} u(e_i)$ the formula is rewritten as
    $u(d') + v(d') = u(d) + v(d) - A + B$ with
    $A = \\min((u_1+v_1) + (u_2+v_2), (u_3-v_3) + (u_4-v_4) + |r|)$ and
    $B = \\min((u_1+v_1) + (u_4+v_4), (u_2-v_2) + (u_3-v_3) + |r|)$, whose
    arguments are integral when $|r|$ is.

    Args:
        frame: frame of the source triangulation
        move: a move of that triangulation

    Returns:
        Map into the frame of the flipped triangulation (same slots).
    """
    T = frame.triangulation
    if move.removed not in T.diagonals or T.index(move.removed) != move.slot:
        raise InvalidArgumentError(f"move {move} does not belong to {T!r}")
    N = frame.dim
    target = frame.with_triangulation(T.replace(move.removed, move.inserted))
    plus, minus = _frame_move_forms(frame, move)
    r = AffineForm.const(N, frame.perimeter)
    A = TropExpr.min_of(
        TropExpr.affine(plus[0] + plus[1]), TropExpr.affine(minus[2] + minus[3] + r)
    )
    B = TropExpr.min_of(
        TropExpr.affine(plus[0] + plus[3]), TropExpr.affine(minus[1] + minus[2] + r)
    )
    source_sum = length_form(frame, move.removed) + arc_form(frame, move.removed_arc())
    slot = target.diagonal_index(move.inserted)
    # target u(d') + v(d') is -u_{d'} plus terms in the shared side coordinates
    rest = length_form(target, move.inserted) + arc_form(target, move.inserted_arc())
    rest = rest + AffineForm.coordinate(N, slot)
    new = TropExpr.affine(rest - source_sum) + A - B
    coords = [TropExpr.coordinate(N, i) for i in range(N)]
    coords[slot] = new
    return PLMap(N, tuple(coords))


def bending_plmap(T: Triangulation, move: WhiteheadMove, r: Sequence[Rational]) -> PLMap:
    """
    The same transformation on bending polytopes, in diagonal lengths.

    Args:
        T: source triangulation
        move: one of its moves
        r: side lengths

    Returns:
        Map from $x(\\Gamma)$ to $x(\\Gamma')$.
    """
    rs = check_side_lengths(r, T.n)
    N = T.n - 3

    def length(e: Edge) -> TropExpr:
        if isinstance(e, Side):
            return TropExpr.constant(N, rs[e.index - 1])
        return TropExpr.coordinate(N, T.index(e))

    u1, u2, u3, u4 = (length(e) for e in move.quad)
    u = TropExpr.coordinate(N, move.slot)
    new = u - TropExpr.min_of(u1 + u2, u3 + u4) + TropExpr.min_of(u1 + u4, u2 + u3)
    coords = [TropExpr.coordinate(N, i) for i in range(N)]
    coords[move.slot] = new
    return PLMap(N, tuple(coords))


def path_plmap(T1: Triangulation, T2: Triangulation, perimeter: Rational) -> Tuple[PLMap, Triangulation]:
    """
    $T_{\\Gamma_1, \\Gamma_2}$ along a shortest flip path.

    Returns:
        The composed map and the target triangulation in the slot order the
        path produces.
    """
    frame = CoordinateFrame(T1, operators.rational(perimeter))
    maps = []
    current = T1
    for move in flip_path(T1, T2):
        maps.append(whitehead_plmap(frame.with_triangulation(current), move))
        current = current.replace(move.removed, move.inserted)
    return compose_plmaps(list(reversed(maps)), dim=frame.dim), current


def bending_path_plmap(T1: Triangulation, T2: Triangulation, r: Sequence[Rational]) -> Tuple[PLMap, Triangulation]:
    "Bending-coordinate counterpart of `path_plmap`."
    maps = []
    current = T1
    for move in flip_path(T1, T2):
        maps.append(bending_plmap(current, move, r))
        current = current.replace(move.removed, move.inserted)
    return compose_plmaps(list(reversed(maps)), dim=T1.n - 3), current


def reverse_plmap(frame: CoordinateFrame, move: WhiteheadMove) -> PLMap:
    "The Whitehead map of the move undoing `move`."
    T = frame.triangulation
    back = reverse_move(T, move)
    flipped = T.replace(move.removed, move.inserted)
    return whitehead_plmap(frame.with_triangulation(flipped), back)


def transform_polytope_check(
    plmap: PLMap, P1: Polytope, P2: Polytope, volume: bool = True
) -> Report:
    """
    Check that `plmap` maps the lattice points of `P1` bijectively onto those
    of `P2`, and that the volumes agree.

    Args:
        plmap: candidate map
        P1: source polytope
        P2: target polytope
        volume: also compare Ehrhart volumes

    Returns:
        Report with checks `image`, `injective` and `volume`.
    """
    report = Report()
    src = lattice_points(P1)
    dst = set(tuple(Fraction(x) for x in p) for p in lattice_points(P2))
    images = [plmap(p) for p in src]
    report.counts["source"] = len(src)
    report.counts["target"] = len(dst)
    outside = next((p for p, q in zip(src, images) if q not in dst), None)
    missed = sorted(dst - set(images))
    report.add_check(
        "image",
        outside is None and not missed,
        f"{len(src)} source points, {len(dst)} target points",
        witness=outside if outside is not None else (missed[0] if missed else None),
    )
    seen: Dict[Point, Any] = {}
    collision = None
    for p, q in zip(src, images):
        if q in seen:
            collision = (seen[q], p)
            break
        seen[q] = p
    report.add_check("injective", collision is None, "on lattice points", witness=collision)
    if volume:
        v1, v2 = ehrhart_volume(P1), ehrhart_volume(P2)
        report.counts["volume"] = v1
        report.add_check(
            "volume",
            v1 == v2,
            f"{fmt_rational(v1)} vs {fmt_rational(v2)}",
            witness=(v1, v2) if v1 != v2 else None,
        )
    logger.debug("transform check: %s", "pass" if report.passed else "fail")
    return report


def min_identity(a: Any, b: Any) -> Tuple[Any, Any]:
    """
    Both sides of $\\min(a, b) + \\min(-a, b) - b = \\min(a, -a, b, -b)$.

    Works for rationals and for `TropExpr`.
    """
    lhs = operators.minimum(a, b) + operators.minimum(-a, b) - b
    rhs = operators.minimum(a, -a, b, -b)
    return lhs, rhs


def range_lengths(u1: Any, u2: Any, u3: Any, u4: Any) -> Tuple[Any, Any]:
    """
    Lengths of the ranges of $u$ and $u'$ for fixed quadrilateral sides.

    Returns:
        $\\min(u_1+u_2, u_3+u_4) + \\min(u_1-u_2, u_2-u_1, u_3-u_4, u_4-u_3)$ and
        $\\min(u_1+u_4, u_2+u_3) + \\min(u_1-u_4, u_4-u_1, u_2-u_3, u_3-u_2)$.
    """
    m = operators.minimum
    first = m(u1 + u2, u3 + u4) + m(u1 - u2, u2 - u1, u3 - u4, u4 - u3)
    second = m(u1 + u4, u2 + u3) + m(u1 - u4, u4 - u1, u2 - u3, u3 - u2)
    return first, second


def integrality_check(plmap: PLMap, frame: Optional[CoordinateFrame] = None) -> bool:
    """
    True if every affine leaf and every scale factor is integral.

    Args:
        plmap: map to inspect
        frame: frame the map was built over (its perimeter is already folded
            into the constants)

    Returns:
        Whether the map is defined over $\\mathbb{Z}$.
    """
    if frame is not None and frame.dim != plmap.dim:
        raise InvalidArgumentError(f"dimension mismatch: {frame.dim} vs {plmap.dim}")
    for node in topological_sort(plmap.coords):
        assert isinstance(node, TropExpr)
        if node.is_leaf():
            assert node.form is not None
            if not node.form.is_integral():
                return False
        elif node.op == "scale" and not operators.is_integral(node.factor):
            return False
    return True


def maps_agree(f: PLMap, g: PLMap, points: Iterable[Sequence[Rational]]) -> Optional[Point]:
    "First point where the two maps differ, or None."
    for p in points:
        if f(p) != g(p):
            return tuple(Fraction(x) for x in p)
    return None
