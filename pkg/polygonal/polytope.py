"""
Exact rational polytopes: moment polytopes $\\Delta_\\Gamma$, bending
polytopes $\\Delta_\\Gamma(r)$, lattice points, Ehrhart volume and vertices.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from . import operators
from .combinatorics import Diagonal, Edge, Side, Triangulation, triangles
from .config import MAX_EHRHART_DIM, MAX_VERTEX_DIM
from .errors import (
    EmptySpaceError,
    InvalidArgumentError,
    NotFoundError,
    ResourceLimitError,
    UnboundedError,
)
from .operators import Rational, fmt_rational

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
LatticePoint = Tuple[int, ...]


def _sympy_matrix(rows: Sequence[Sequence[Rational]]) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows]
    )


def _fraction(q: sympy.Rational) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def _kernel(rows: Sequence[Sequence[Rational]], ncols: int) -> List[Point]:
    "Basis of $\\{x : Ax = 0\\}$."
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    return [tuple(_fraction(x) for x in v) for v in _sympy_matrix(rows).nullspace()]


def _solve(a: Sequence[Sequence[Rational]], b: Sequence[Rational]) -> Optional[Point]:
    "Unique solution of the square system $Ax = b$, None if $A$ is singular."
    A = _sympy_matrix(a)
    if A.det() == 0:
        return None
    x = A.LUsolve(_sympy_matrix([[y] for y in b]))
    return tuple(_fraction(v) for v in x)


def affine_rank(points: Sequence[Sequence[Rational]]) -> int:
    "Dimension of the affine hull of a point set (-1 if empty)."
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    return int(_sympy_matrix(diffs).rank()) if diffs else 0


@dataclass(frozen=True)
class AffineForm:
    """
    $\\ell(u) = \\langle v, u \\rangle - \\tau$ with exact rational data.

    Attributes:
        coeffs : $v$
        constant : $-\\tau$
    """

    coeffs: Tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    @classmethod
    def make(cls, coeffs: Sequence[Rational], constant: Rational = 0) -> AffineForm:
        return cls(tuple(Fraction(c) for c in coeffs), Fraction(constant))

    @classmethod
    def zero(cls, dim: int) -> AffineForm:
        return cls.make([0] * dim)

    @classmethod
    def const(cls, dim: int, c: Rational) -> AffineForm:
        return cls.make([0] * dim, c)

    @classmethod
    def coordinate(cls, dim: int, i: int, scale: Rational = 1) -> AffineForm:
        "$\\ell(u) = s \\cdot u_i$"
        if not 0 <= i < dim:
            raise InvalidArgumentError(f"coordinate {i} out of range for dimension {dim}")
        v = [Fraction(0)] * dim
        v[i] = Fraction(scale)
        return cls(tuple(v), Fraction(0))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def tau(self) -> Fraction:
        return -self.constant

    def __call__(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self.dim:
            raise InvalidArgumentError(
                f"point of dimension {len(point)} for a form of dimension {self.dim}"
            )
        return operators.dot(self.coeffs, point) + self.constant

    def __add__(self, other: AffineForm) -> AffineForm:
        return AffineForm(
            tuple(operators.addLists(self.coeffs, other.coeffs)),
            self.constant + other.constant,
        )

    def __neg__(self) -> AffineForm:
        return AffineForm(tuple(operators.negList(self.coeffs)), -self.constant)

    def __sub__(self, other: AffineForm) -> AffineForm:
        return self + (-other)

    def scale(self, c: Rational) -> AffineForm:
        return AffineForm(
            tuple(operators.scaleList(c, self.coeffs)), Fraction(c) * self.constant
        )

    def is_integral(self) -> bool:
        return all(operators.is_integral(x) for x in self.coeffs + (self.constant,))

    def denominator(self) -> int:
        return operators.common_denominator(self.coeffs + (self.constant,))

    def to_json(self) -> Dict[str, Any]:
        return {"v": [fmt_rational(x) for x in self.coeffs], "tau": fmt_rational(self.tau)}

    def __str__(self) -> str:
        terms = [f"{fmt_rational(c)}*u{i + 1}" for i, c in enumerate(self.coeffs) if c]
        if self.constant or not terms:
            terms.append(fmt_rational(self.constant))
        return " + ".join(terms)


@dataclass(frozen=True)
class CoordinateFrame:
    """
    Frame coordinates $(u_{e_1}, \\ldots, u_{e_{n-1}}, u_{d_1}, \\ldots, u_{d_{n-3}})$
    of the moment polytope of a triangulation.
    """

    triangulation: Triangulation
    perimeter: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "perimeter", operators.rational(self.perimeter))
        if self.perimeter <= 0:
            raise InvalidArgumentError("perimeter must be positive")

    @property
    def n(self) -> int:
        return self.triangulation.n

    @property
    def dim(self) -> int:
        return 2 * self.n - 4

    def names(self) -> List[str]:
        sides = [f"u_e{i}" for i in range(1, self.n)]
        return sides + [f"u_d{a}" for a in range(1, self.n - 2)]

    def side_index(self, i: int) -> int:
        if not 1 <= i < self.n:
            raise NotFoundError(f"e{i} has no frame coordinate")
        return i - 1

    def diagonal_index(self, d: Diagonal) -> int:
        return self.n - 1 + self.triangulation.index(d)

    def with_triangulation(self, T: Triangulation) -> CoordinateFrame:
        if T.n != self.n:
            raise InvalidArgumentError(f"size mismatch: {T.n} vs {self.n}")
        return CoordinateFrame(T, self.perimeter)


def length_form(frame: CoordinateFrame, a: Edge) -> AffineForm:
    """
    The length coordinate $u(a)$ as an affine form in frame coordinates.

    Args:
        frame: coordinate frame
        a: a side or a diagonal of the frame's triangulation

    Returns:
        $\\frac12 u_{e_i}$, $|r| - \\frac12 \\sum u_{e_i}$ or
        $-u_{d_\\alpha} + \\frac12 \\sum_{i \\in I_\\alpha} u_{e_i}$.
    """
    N, n = frame.dim, frame.n
    half = Fraction(1, 2)
    if isinstance(a, Side):
        if a.n != n:
            raise NotFoundError(f"{a} is not a side of the {n}-gon")
        if a.index < n:
            return AffineForm.coordinate(N, a.index - 1, half)
        out = AffineForm.const(N, frame.perimeter)
        for i in range(1, n):
            out = out - AffineForm.coordinate(N, i - 1, half)
        return out
    if isinstance(a, Diagonal):
        out = -AffineForm.coordinate(N, frame.diagonal_index(a))
        for i in a.arc:
            out = out + AffineForm.coordinate(N, i - 1, half)
        return out
    raise NotFoundError(f"unknown edge label {a!r}")


def arc_form(frame: CoordinateFrame, arc: Sequence[int]) -> AffineForm:
    "$v(a) = \\sum_{i \\in I_a} u(e_i)$ in frame coordinates."
    out = AffineForm.zero(frame.dim)
    for i in arc:
        out = out + length_form(frame, Side(frame.n, i))
    return out


def _triangle_inequalities(
    lengths: Sequence[AffineForm], names: Sequence[str]
) -> List[Tuple[AffineForm, str]]:
    la, lb, lc = lengths
    a, b, c = names
    return [
        (lb + lc - la, f"u({b})+u({c})-u({a})"),
        (la + lc - lb, f"u({a})+u({c})-u({b})"),
        (la + lb - lc, f"u({a})+u({b})-u({c})"),
    ]


@dataclass(frozen=True)
class Polytope:
    """
    $\\{u \\in \\mathbb{R}^N : \\ell_i(u) \\geq 0\\}$.

    Attributes:
        dim : ambient dimension $N$
        halfspaces : the forms $\\ell_i$
        labels : originating inequality of each form
    """

    dim: int
    halfspaces: Tuple[AffineForm, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(f"f{i}" for i in range(len(self.halfspaces)))
            )
        if len(self.labels) != len(self.halfspaces):
            raise InvalidArgumentError("one label per halfspace")
        for h in self.halfspaces:
            if h.dim != self.dim:
                raise InvalidArgumentError(
                    f"halfspace of dimension {h.dim} in a polytope of dimension {self.dim}"
                )

    @classmethod
    def box(cls, lo: Sequence[Rational], hi: Sequence[Rational]) -> Polytope:
        "The box $\\prod [lo_i, hi_i]$."
        dim = len(lo)
        forms = []
        for i, (a, b) in enumerate(zip(lo, hi)):
            forms.append(AffineForm.coordinate(dim, i) - AffineForm.const(dim, a))
            forms.append(AffineForm.const(dim, b) - AffineForm.coordinate(dim, i))
        return cls(dim, tuple(forms))

    def contains(self, point: Sequence[Rational]) -> bool:
        return all(h(point) >= 0 for h in self.halfspaces)

    def contains_strictly(self, point: Sequence[Rational]) -> bool:
        return all(h(point) > 0 for h in self.halfspaces)

    def integer_rows(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Each halfspace as an integral row $A_i x \\geq b_i$.

        Returns:
            `(A, b)` with every row cleared of its denominators.
        """
        rows, rhs = [], []
        for h in self.halfspaces:
            k = h.denominator()
            rows.append([int(x * k) for x in h.coeffs])
            rhs.append(int(-h.constant * k))
        A = np.array(rows, dtype=np.int64).reshape(len(rows), self.dim)
        return A, np.array(rhs, dtype=np.int64)

    def translate(self, shift: Sequence[Rational]) -> Polytope:
        "The polytope $P - s$."
        forms = tuple(
            AffineForm(h.coeffs, h.constant + operators.dot(h.coeffs, shift))
            for h in self.halfspaces
        )
        return Polytope(self.dim, forms, self.labels)

    def dilate(self, k: Rational) -> Polytope:
        "The polytope $kP$."
        forms = tuple(AffineForm(h.coeffs, h.constant * k) for h in self.halfspaces)
        return Polytope(self.dim, forms, self.labels)

    def is_bounded(self) -> bool:
        """
        True when the recession cone $\\{x : Ax \\geq 0\\}$ is $\\{0\\}$.
        """
        rows = [list(h.coeffs) for h in self.halfspaces]
        if self.dim == 0:
            return True
        if not rows or _sympy_matrix(rows).rank() < self.dim:
            return False
        for subset in itertools.combinations(rows, self.dim - 1):
            kernel = _kernel(list(subset), self.dim)
            if len(kernel) != 1:
                continue
            for sign in (1, -1):
                ray = [sign * x for x in kernel[0]]
                if all(operators.dot(r, ray) >= 0 for r in rows):
                    return False
        return True

    @cached_property
    def vertex_list(self) -> List[Point]:
        return vertices(self)

    def is_empty(self) -> bool:
        return not self.vertex_list

    def irredundant(self) -> Polytope:
        """
        Drop redundant and repeated facets.

        Returns:
            A polytope with the same points whose halfspaces are exactly the
            facets, in their original order.
        """
        verts = self.vertex_list
        seen = set()
        kept = []
        for h, label in zip(self.halfspaces, self.labels):
            key = _normalized(h)
            if key in seen:
                continue
            tight = [v for v in verts if h(v) == 0]
            if affine_rank(tight) == self.dim - 1:
                seen.add(key)
                kept.append((h, label))
        return Polytope(self.dim, tuple(h for h, _ in kept), tuple(l for _, l in kept))

    def to_json(self) -> Dict[str, Any]:
        return {"dim": self.dim, "ineqs": [h.to_json() for h in self.halfspaces]}


def _normalized(h: AffineForm) -> Tuple[Fraction, ...]:
    scale = next((abs(x) for x in h.coeffs if x), Fraction(1))
    return tuple(x / scale for x in h.coeffs + (h.constant,))


def moment_polytope(T: Triangulation, perimeter: Rational) -> Polytope:
    """
    The moment polytope $\\Delta_\\Gamma$ in frame coordinates.

    Args:
        T: triangulation
        perimeter: $|r| > 0$

    Returns:
        Polytope in dimension $2n - 4$ with three triangle inequalities per
        triangle.
    """
    frame = CoordinateFrame(T, operators.rational(perimeter))
    forms, labels = [], []
    for t in triangles(T):
        lengths = [length_form(frame, e) for e in t.edges]
        for form, label in _triangle_inequalities(lengths, [str(e) for e in t.edges]):
            forms.append(form)
            labels.append(label)
    return Polytope(frame.dim, tuple(forms), tuple(labels))


def check_side_lengths(r: Sequence[Rational], n: int) -> Tuple[Fraction, ...]:
    """
    Validate side lengths for a nonempty, non-degenerate polygon space.

    Args:
        r: side lengths
        n: polygon size

    Returns:
        The lengths as fractions.
    """
    rs = tuple(operators.rational(x) for x in r)
    if len(rs) != n:
        raise InvalidArgumentError(f"expected {n} side lengths, got {len(rs)}")
    total = operators.sum(rs)
    for i, x in enumerate(rs, start=1):
        if x <= 0:
            raise EmptySpaceError(f"side length r{i} = {fmt_rational(x)} is not positive")
        if not x < total - x:
            raise EmptySpaceError(
                f"r{i} = {fmt_rational(x)} violates r_i < |r| - r_i"
            )
    return rs


def bending_polytope(T: Triangulation, r: Sequence[Rational]) -> Polytope:
    """
    The bending polytope $\\Delta_\\Gamma(r)$ in the diagonal lengths
    $x_\\alpha = u(d_\\alpha)$.

    Args:
        T: triangulation
        r: side lengths satisfying $r_i < |r| - r_i$

    Returns:
        Polytope in dimension $n - 3$.
    """
    rs = check_side_lengths(r, T.n)
    N = T.n - 3

    def length(e: Edge) -> AffineForm:
        if isinstance(e, Side):
            return AffineForm.const(N, rs[e.index - 1])
        return AffineForm.coordinate(N, T.index(e))

    forms, labels = [], []
    for t in triangles(T):
        lengths = [length(e) for e in t.edges]
        for form, label in _triangle_inequalities(lengths, [str(e) for e in t.edges]):
            forms.append(form)
            labels.append(label)
    return Polytope(N, tuple(forms), tuple(labels))


def slice_point(T: Triangulation, r: Sequence[Rational], x: Sequence[Rational]) -> Point:
    """
    Frame coordinates of the point with side lengths `r` and diagonal lengths `x`.

    Args:
        T: triangulation
        r: side lengths
        x: diagonal lengths in slot order

    Returns:
        $u_{e_i} = 2 r_i$, $u_{d_\\alpha} = \\sum_{i \\in I_\\alpha} r_i - x_\\alpha$.
    """
    rs = [operators.rational(v) for v in r]
    if len(x) != len(T.diagonals):
        raise InvalidArgumentError(f"expected {len(T.diagonals)} diagonal lengths")
    sides = [2 * rs[i] for i in range(T.n - 1)]
    diags = [
        operators.sum(rs[i - 1] for i in d.arc) - Fraction(xa)
        for d, xa in zip(T.diagonals, x)
    ]
    return tuple(sides + diags)


def vertices(P: Polytope, max_dim: int = MAX_VERTEX_DIM) -> List[Point]:
    """
    Exact vertex enumeration over $N$-subsets of facets.

    Args:
        P: polytope
        max_dim: dimension limit

    Returns:
        Sorted, deduplicated vertices.
    """
    if P.dim > max_dim:
        raise ResourceLimitError(f"dimension {P.dim} exceeds the vertex limit {max_dim}")
    found = set()
    for subset in itertools.combinations(P.halfspaces, P.dim):
        x = _solve([h.coeffs for h in subset], [-h.constant for h in subset])
        if x is not None and P.contains(x):
            found.add(tuple(x))
    out = sorted(found)
    logger.debug("found %d vertices in dimension %d", len(out), P.dim)
    return out


def _bounding_box(P: Polytope) -> Tuple[List[int], List[int]]:
    verts = P.vertex_list
    lo = [math.ceil(min(v[i] for v in verts)) for i in range(P.dim)]
    hi = [math.floor(max(v[i] for v in verts)) for i in range(P.dim)]
    return lo, hi


def _enumerate(
    A: np.ndarray, b: np.ndarray, lo: Sequence[int], hi: Sequence[int], chunk: int = 4096
) -> np.ndarray:
    # extend integer prefixes one coordinate at a time, pruning every prefix
    # that cannot satisfy a row even with the best possible tail
    m, dim = A.shape
    lo_a = np.array(lo, dtype=np.int64)
    hi_a = np.array(hi, dtype=np.int64)
    best = np.maximum(A * lo_a[None, :], A * hi_a[None, :])
    tail = np.zeros((m, dim + 1), dtype=np.int64)
    for j in range(dim - 1, -1, -1):
        tail[:, j] = tail[:, j + 1] + best[:, j]
    pts = np.zeros((1, 0), dtype=np.int64)
    partial = np.zeros((1, m), dtype=np.int64)
    for j in range(dim):
        values = np.arange(lo[j], hi[j] + 1, dtype=np.int64)
        if values.size == 0:
            return np.zeros((0, dim), dtype=np.int64)
        new_pts, new_partial = [], []
        for start in range(0, len(pts), chunk):
            block = partial[start : start + chunk]
            grown = block[:, None, :] + values[None, :, None] * A[:, j][None, None, :]
            ok = np.all(grown + tail[:, j + 1][None, None, :] >= b[None, None, :], axis=2)
            ki, vi = np.nonzero(ok)
            new_pts.append(
                np.concatenate([pts[start + ki], values[vi][:, None]], axis=1)
            )
            new_partial.append(grown[ki, vi])
        pts = np.concatenate(new_pts, axis=0)
        partial = np.concatenate(new_partial, axis=0)
        if len(pts) == 0:
            return np.zeros((0, dim), dtype=np.int64)
    return pts


def _lattice(P: Polytope, strict: bool) -> List[LatticePoint]:
    if not P.is_bounded():
        raise UnboundedError("lattice points of an unbounded polytope")
    if P.is_empty():
        return []
    if P.dim == 0:
        ok = P.contains_strictly(()) if strict else P.contains(())
        return [()] if ok else []
    A, b = P.integer_rows()
    if strict:
        b = b + 1
    lo, hi = _bounding_box(P)
    pts = _enumerate(A, b, lo, hi)
    return [tuple(int(x) for x in p) for p in pts]


def lattice_points(P: Polytope) -> List[LatticePoint]:
    """
    $P \\cap \\mathbb{Z}^N$ in lexicographic order.

    Args:
        P: bounded polytope

    Returns:
        Integer points.
    """
    out = _lattice(P, strict=False)
    logger.debug("%d lattice points in dimension %d", len(out), P.dim)
    return out


def interior_lattice_points(P: Polytope) -> List[LatticePoint]:
    "Integer points with every inequality strict."
    return _lattice(P, strict=True)


def lattice_count(P: Polytope, dilation: int = 1) -> int:
    "$|kP \\cap \\mathbb{Z}^N|$"
    if dilation < 0:
        raise InvalidArgumentError("dilation must be nonnegative")
    return len(lattice_points(P.dilate(dilation)))


def ehrhart_volume(P: Polytope, max_dim: int = MAX_EHRHART_DIM) -> Fraction:
    """
    Euclidean volume from the Ehrhart polynomial.

    The polytope is first scaled to an integral polytope $Q = DP$; the values
    $L_Q(k)$ for $k = 0..\\lceil N/2 \\rceil$ and, by reciprocity,
    $L_Q(-k) = (-1)^N |\\mathrm{int}(kQ) \\cap \\mathbb{Z}^N|$ determine the
    polynomial, whose leading coefficient is $\\mathrm{vol}(Q)$.

    Args:
        P: bounded polytope
        max_dim: dimension limit

    Returns:
        $\\mathrm{vol}(P)$.
    """
    N = P.dim
    if N > max_dim:
        raise ResourceLimitError(f"dimension {N} exceeds the Ehrhart limit {max_dim}")
    if not P.is_bounded():
        raise UnboundedError("volume of an unbounded polytope")
    verts = P.vertex_list
    if affine_rank(verts) < N:
        return Fraction(0)
    D = operators.common_denominator(x for v in verts for x in v)
    Q = P.dilate(D)
    K = (N + 1) // 2
    samples = [(0, 1)]
    for k in range(1, K + 1):
        kQ = Q.dilate(k)
        samples.append((k, len(lattice_points(kQ))))
        samples.append((-k, (-1) ** N * len(interior_lattice_points(kQ))))
    k = sympy.Symbol("k")
    poly = sympy.Poly(sympy.interpolate(samples, k), k)
    lead = sympy.Rational(poly.coeff_monomial(k**N))
    volume = Fraction(int(lead.p), int(lead.q)) / Fraction(D) ** N
    logger.debug("Ehrhart volume %s in dimension %d (dilation %d)", volume, N, D)
    return volume


def predicted_vertices(
    T: Triangulation, perimeter: Optional[Rational] = None
) -> List[Point]:
    """
    Moment images of the torus fixed points $p_{kl}$, $k < l$.

    $u_{e_i}(p_{kl}) = |r|$ if $i \\in \\{k, l\\}$ and $u_{d_\\alpha}(p_{kl}) = |r|$
    if $\\{k, l\\} \\subseteq I_\\alpha$, all other coordinates $0$.

    Args:
        T: triangulation
        perimeter: $|r|$, defaults to $n$

    Returns:
        The $n(n-1)/2$ images, ordered by $(k, l)$.
    """
    c = Fraction(T.n) if perimeter is None else operators.rational(perimeter)
    out = []
    for k, l in itertools.combinations(range(1, T.n + 1), 2):
        sides = [c if i in (k, l) else Fraction(0) for i in range(1, T.n)]
        diags = [c if {k, l} <= set(d.arc) else Fraction(0) for d in T.diagonals]
        out.append(tuple(sides + diags))
    return out


def reflexive_shift(T: Triangulation) -> LatticePoint:
    "The point $u_{e_i} = 2$, $u_{d_\\alpha} = |I_\\alpha| - 1$ where every $u(a) = 1$."
    return tuple([2] * (T.n - 1) + [len(d.arc) - 1 for d in T.diagonals])


def reflexivity_check(T: Triangulation, n: Optional[int] = None) -> Tuple[bool, LatticePoint]:
    """
    Check that $\\Delta_\\Gamma$ at $|r| = n$ is reflexive after an integral shift.

    Args:
        T: triangulation
        n: perimeter, defaults to the polygon size

    Returns:
        Whether every facet reads $\\langle w, u' \\rangle \\geq -1$ with integral
        $w$ and the origin is the only interior lattice point, together with
        the interior point in the original coordinates.
    """
    perimeter = T.n if n is None else n
    shift = reflexive_shift(T)
    P = moment_polytope(T, perimeter)
    shifted = P.translate(shift).irredundant()
    ok = True
    for h in shifted.halfspaces:
        if h.constant <= 0:
            ok = False
            break
        w = h.scale(1 / h.constant)
        if not w.is_integral():
            ok = False
            break
    interior = interior_lattice_points(P)
    ok = ok and interior == [shift]
    logger.debug("reflexivity of %r: %s (%d interior points)", T, ok, len(interior))
    return ok, shift
