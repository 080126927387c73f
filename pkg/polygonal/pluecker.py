"""
Tree-path weights, deformed Plücker relations, their binomial central fibers,
torus fixed points and singular strata of the toric degeneration.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .combinatorics import Diagonal, Edge, Triangulation, dual_tree, leaf_path, triangles_with
from .errors import InvalidArgumentError, InvariantViolation
from .operators import Rational
from .polytope import Point, predicted_vertices

logger = logging.getLogger(__name__)

Quad = Tuple[int, int, int, int]
SIGNS = (1, -1, 1)


@dataclass(frozen=True, order=True)
class PlueckerVar:
    "$Z_{ij}$, $i < j$."

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise InvalidArgumentError(f"Pluecker variable needs 1 <= i < j, got ({self.i}, {self.j})")

    @property
    def name(self) -> str:
        if self.j < 10:
            return f"Z{self.i}{self.j}"
        return f"Z{self.i},{self.j}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class WeightMatrix:
    """
    Doubled weights $W[i,j][\\alpha] = 2 w^\\Gamma_{ij,\\alpha} \\in \\{0, 1\\}$.
    """

    n: int
    rows: Dict[Tuple[int, int], Tuple[int, ...]]

    def __getitem__(self, ij: Tuple[int, int]) -> Tuple[int, ...]:
        i, j = ij
        return self.rows[(min(i, j), max(i, j))]


@dataclass(frozen=True)
class Term:
    """
    $\\pm t^{e} Z_{ab} Z_{cd}$.

    Attributes:
        coef : the Plücker sign
        vars : the two variables
        t : exponent of each $t_\\alpha$
    """

    coef: int
    vars: Tuple[PlueckerVar, PlueckerVar]
    t: Tuple[int, ...]

    def deformed(self) -> bool:
        return any(self.t)


@dataclass(frozen=True)
class DeformedRelation:
    "A deformed quadric $\\tilde p_{ijkl}$ with its three signed terms."

    quad: Quad
    terms: Tuple[Term, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "quad": list(self.quad),
            "terms": [
                {"coef": t.coef, "vars": [v.name for v in t.vars], "t": list(t.t)}
                for t in self.terms
            ],
        }

    def __str__(self) -> str:
        return format_relation(self)


@dataclass(frozen=True)
class ToricIdeal:
    "Binomial generators of the central fiber, one per quadruple."

    generators: Tuple[DeformedRelation, ...]

    def to_json(self) -> List[Dict[str, Any]]:
        return [g.to_json() for g in self.generators]


@dataclass(frozen=True)
class SingularStratum:
    """
    $\\{Z^{P_a}_{a_1 d} = Z^{P_a}_{a_2 d} = Z^{P_b}_{b_1 d} = Z^{P_b}_{b_2 d} = 0\\}$.

    Attributes:
        diagonal : $d_\\alpha$
        coordinates : the four vanishing pairs (edge, $d_\\alpha$)
    """

    diagonal: Diagonal
    coordinates: Tuple[Tuple[Edge, Diagonal], ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "diagonal": list(self.diagonal.arc),
            "vanishing": [f"Z({a},{d})" for a, d in self.coordinates],
        }


def check_quad(quad: Sequence[int], n: int) -> Quad:
    q = tuple(quad)
    if len(q) != 4 or not all(a < b for a, b in zip(q, q[1:])):
        raise InvalidArgumentError(f"quadruple must be strictly increasing, got {q}")
    if q[0] < 1 or q[3] > n:
        raise InvalidArgumentError(f"quadruple {q} out of range 1..{n}")
    return q  # type: ignore


def weight_matrix(T: Triangulation) -> WeightMatrix:
    """
    $W[i,j][\\alpha] = 1$ iff the path $\\gamma(i, j)$ in the dual tree crosses $d_\\alpha$.

    Args:
        T: triangulation

    Returns:
        The doubled weights, diagonals in slot order.
    """
    tree = dual_tree(T)
    rows = {}
    for i, j in itertools.combinations(range(1, T.n + 1), 2):
        path = leaf_path(tree, i, j)
        rows[(i, j)] = tuple(int(d in path) for d in T.diagonals)
    return WeightMatrix(T.n, rows)


def _term_vars(quad: Quad) -> List[Tuple[PlueckerVar, PlueckerVar]]:
    i, j, k, l = quad
    return [
        (PlueckerVar(i, j), PlueckerVar(k, l)),
        (PlueckerVar(i, k), PlueckerVar(j, l)),
        (PlueckerVar(i, l), PlueckerVar(j, k)),
    ]


def plucker_quadric(i: int, j: int, k: int, l: int) -> DeformedRelation:
    "$Z_{ij} Z_{kl} - Z_{ik} Z_{jl} + Z_{il} Z_{jk}$ with no deformation."
    quad = check_quad((i, j, k, l), l)
    return DeformedRelation(
        quad, tuple(Term(s, v, ()) for s, v in zip(SIGNS, _term_vars(quad)))
    )


def deform_relation(
    T: Triangulation, quad: Sequence[int], W: Optional[WeightMatrix] = None
) -> DeformedRelation:
    """
    $\\tilde p_{ijkl}$: each term carries $t^{(w(p) - w(m))}$ where $w(m)$ is
    the weight of the term and $w(p)$ the componentwise maximum.

    Args:
        T: triangulation
        quad: $i < j < k < l$
        W: precomputed weights

    Returns:
        The deformed relation.
    """
    q = check_quad(quad, T.n)
    W = weight_matrix(T) if W is None else W
    pairs = _term_vars(q)
    raw = [
        tuple(a + b for a, b in zip(W[(x.i, x.j)], W[(y.i, y.j)])) for x, y in pairs
    ]
    top = tuple(max(col) for col in zip(*raw))
    terms = []
    for sign, vars_, w in zip(SIGNS, pairs, raw):
        diff = [m - x for m, x in zip(top, w)]
        if any(x % 2 for x in diff):
            raise InvariantViolation(f"odd weight difference {diff} in relation {q}")
        terms.append(Term(sign, vars_, tuple(x // 2 for x in diff)))
    return DeformedRelation(q, tuple(terms))


def deformed_relations(T: Triangulation) -> List[DeformedRelation]:
    "Every $\\tilde p_{ijkl}$, quadruples in lexicographic order."
    W = weight_matrix(T)
    return [deform_relation(T, q, W) for q in itertools.combinations(range(1, T.n + 1), 4)]


def evaluate_relation(rel: DeformedRelation, t: Sequence[Rational]) -> Dict[Tuple[PlueckerVar, PlueckerVar], Fraction]:
    """
    Substitute values for the $t_\\alpha$.

    Args:
        rel: relation
        t: one value per deformation parameter

    Returns:
        Coefficient of each quadratic monomial (zeros dropped).
    """
    out: Dict[Tuple[PlueckerVar, PlueckerVar], Fraction] = {}
    for term in rel.terms:
        if len(t) != len(term.t):
            raise InvalidArgumentError(f"expected {len(term.t)} parameter values, got {len(t)}")
        c = Fraction(term.coef)
        for x, e in zip(t, term.t):
            c *= Fraction(x) ** e
        if c:
            out[term.vars] = out.get(term.vars, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def central_fiber(T: Triangulation) -> ToricIdeal:
    """
    The relations at $t = 0$; each must keep exactly two terms.

    Args:
        T: triangulation

    Returns:
        One binomial per quadruple.
    """
    gens = []
    for rel in deformed_relations(T):
        kept = tuple(term for term in rel.terms if not term.deformed())
        if len(kept) != 2:
            raise InvariantViolation(f"relation {rel} keeps {len(kept)} terms at t = 0")
        gens.append(DeformedRelation(rel.quad, kept))
    logger.debug("central fiber of %r: %d binomials", T, len(gens))
    return ToricIdeal(tuple(gens))


def one_param_family(T: Triangulation, alpha: int) -> List[DeformedRelation]:
    """
    Relations of the subfamily with $t_\\beta = 1$ for $\\beta \\neq \\alpha$.

    With $I_+$ the arc of $d_\\alpha$ and $I_-$ its complement, $t$ multiplies
    $Z_{ij} Z_{kl}$ when $\\{i, j\\}$ and $\\{k, l\\}$ lie on opposite sides,
    $Z_{il} Z_{jk}$ when $i, l \\in I_-$ and $j, k \\in I_+$, and nothing otherwise.

    Args:
        T: triangulation
        alpha: 1-based diagonal slot

    Returns:
        Relations with a single deformation parameter.
    """
    if not 1 <= alpha <= len(T.diagonals):
        raise InvalidArgumentError(f"diagonal slot {alpha} out of range 1..{len(T.diagonals)}")
    plus = set(T.diagonals[alpha - 1].arc)
    out = []
    for q in itertools.combinations(range(1, T.n + 1), 4):
        i, j, k, l = q
        side = [x in plus for x in q]
        if side[0] == side[1] and side[2] == side[3] and side[0] != side[2]:
            deformed = 0
        elif not side[0] and not side[3] and side[1] and side[2]:
            deformed = 2
        else:
            deformed = -1
        terms = tuple(
            Term(s, v, (int(m == deformed),))
            for m, (s, v) in enumerate(zip(SIGNS, _term_vars(q)))
        )
        out.append(DeformedRelation(q, terms))
    return out


def fixed_points(T: Triangulation) -> List[Tuple[Tuple[int, int], Point]]:
    """
    Torus fixed points $p_{kl}$ with their moment images at $|r| = n$.

    Args:
        T: triangulation

    Returns:
        $n(n-1)/2$ pairs `((k, l), image)`.
    """
    pairs = list(itertools.combinations(range(1, T.n + 1), 2))
    return list(zip(pairs, predicted_vertices(T)))


def singular_strata(T: Triangulation) -> List[SingularStratum]:
    """
    One stratum per diagonal: the triangle coordinates pairing $d_\\alpha$ with
    the other edges of its two adjacent triangles.

    Args:
        T: triangulation

    Returns:
        $n - 3$ strata in slot order.
    """
    out = []
    for d in T.diagonals:
        tris = triangles_with(T, d)
        if len(tris) != 2:
            raise InvariantViolation(f"diagonal {d} borders {len(tris)} triangles")
        coords = []
        for t in tris:
            for e in t.other_edges(d):
                coords.append((e, d))
        out.append(SingularStratum(d, tuple(coords)))
    return out


def _t_monomial(t: Sequence[int], names: Sequence[str]) -> List[str]:
    out = []
    for name, e in zip(names, t):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def format_relation(rel: DeformedRelation, names: Sequence[str] = ()) -> str:
    """
    Render as `t1*Z12*Z34 - Z13*Z24 + Z14*Z23`.

    Args:
        rel: relation
        names: names of the parameters, default `t1, t2, ...`

    Returns:
        Text form.
    """
    parts = []
    for idx, term in enumerate(rel.terms):
        labels = list(names) or [f"t{a}" for a in range(1, len(term.t) + 1)]
        body = "*".join(_t_monomial(term.t, labels) + [v.name for v in term.vars])
        if idx == 0:
            parts.append(body if term.coef > 0 else f"-{body}")
        else:
            parts.append(("+ " if term.coef > 0 else "- ") + body)
    return " ".join(parts)