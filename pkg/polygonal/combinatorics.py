"""
Triangulations of the reference n-gon, their dual trivalent trees, leaf paths
and Whitehead moves.

Polygon vertices are numbered $0, \\ldots, n-1$; the side $e_i$ joins vertex
$i-1$ and vertex $i$ (and $e_n$ joins vertex $n-1$ and vertex $0$). A diagonal
joining vertices $p < q$ cuts off the sides $e_{p+1}, \\ldots, e_q$, which is
its canonical arc: the one not containing $n$.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import networkx as nx

from .config import MAX_TRIANGULATION_N
from .errors import (
    InvalidArgumentError,
    InvalidSizeError,
    InvariantViolation,
    NotFoundError,
    ResourceLimitError,
)

logger = logging.getLogger(__name__)

Arc = Tuple[int, ...]
VertexPair = Tuple[int, int]


def is_cyclic_interval(n: int, indices: Iterable[int]) -> bool:
    "True if `indices` is a nonempty proper cyclic interval of {1..n}."
    s = set(indices)
    if not s or len(s) >= n:
        return False
    # exactly one element whose cyclic successor leaves the set
    exits = [i for i in s if (i % n) + 1 not in s]
    return len(exits) == 1


@dataclass(frozen=True, order=True)
class Side:
    """
    The side $e_i$ of the reference polygon.

    Attributes:
        n : polygon size
        index : $i \\in \\{1, \\ldots, n\\}$
    """

    n: int
    index: int

    def __post_init__(self) -> None:
        if not 1 <= self.index <= self.n:
            raise InvalidArgumentError(f"side index {self.index} out of range 1..{self.n}")

    @property
    def arc(self) -> Arc:
        return (self.index,)

    @property
    def vertices(self) -> VertexPair:
        if self.index == self.n:
            return (0, self.n - 1)
        return (self.index - 1, self.index)

    @property
    def name(self) -> str:
        return f"e{self.index}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Diagonal:
    """
    An unoriented diagonal $d = \\sum_{i \\in I} e_i$, stored by its canonical arc.

    Attributes:
        n : polygon size
        arc : sorted canonical arc $I$ (never contains $n$)
    """

    n: int
    arc: Arc

    def __post_init__(self) -> None:
        arc = self.arc
        if not 2 <= len(arc) <= self.n - 2:
            raise InvalidArgumentError(f"arc {arc} has invalid size for n={self.n}")
        if self.n in arc or arc[0] < 1:
            raise InvalidArgumentError(f"arc {arc} is not canonical")
        if list(arc) != list(range(arc[0], arc[-1] + 1)):
            raise InvalidArgumentError(f"arc {arc} is not an interval")

    @classmethod
    def from_arc(cls, n: int, indices: Iterable[int]) -> Diagonal:
        """
        Canonicalize an arc (either orientation) into a diagonal.

        Args:
            n: polygon size
            indices: cyclic interval of side indices

        Returns:
            The diagonal with the arc not containing $n$.
        """
        s = set(indices)
        if any(not 1 <= i <= n for i in s):
            raise InvalidArgumentError(f"arc {sorted(s)} out of range 1..{n}")
        if not is_cyclic_interval(n, s):
            raise InvalidArgumentError(f"arc {sorted(s)} is not a cyclic interval")
        if n in s:
            s = set(range(1, n + 1)) - s
        return cls(n, tuple(sorted(s)))

    @classmethod
    def from_vertices(cls, n: int, p: int, q: int) -> Diagonal:
        "The diagonal joining polygon vertices `p` and `q`."
        p, q = min(p, q), max(p, q)
        return cls(n, tuple(range(p + 1, q + 1)))

    @property
    def vertices(self) -> VertexPair:
        return (self.arc[0] - 1, self.arc[-1])

    @property
    def complement(self) -> Arc:
        "The other arc of the same diagonal (it contains $n$)."
        return tuple(i for i in range(1, self.n + 1) if i not in self.arc)

    @property
    def name(self) -> str:
        return "d" + "".join(str(i) if i < 10 else f"({i})" for i in self.arc)

    def crosses(self, other: Diagonal) -> bool:
        "True if the two diagonals meet in the interior of the polygon."
        p, q = self.vertices
        s, t = other.vertices
        return p < s < q < t or s < p < t < q

    def splits(self, i: int, j: int) -> bool:
        "True if exactly one of the leaves `i`, `j` lies in the arc."
        return (i in self.arc) != (j in self.arc)

    def __str__(self) -> str:
        return self.name


Edge = Union[Side, Diagonal]


def edge_between(n: int, p: int, q: int) -> Edge:
    "The side or diagonal joining polygon vertices `p` and `q`."
    p, q = min(p, q), max(p, q)
    if q == p + 1:
        return Side(n, q)
    if (p, q) == (0, n - 1):
        return Side(n, n)
    return Diagonal.from_vertices(n, p, q)


@dataclass(frozen=True, eq=False)
class Triangulation:
    """
    A triangulation of the reference n-gon by $n-3$ non-crossing diagonals.

    The order of `diagonals` is the slot order $d_1, \\ldots, d_{n-3}$ of the
    coordinates; equality ignores it.
    """

    n: int
    diagonals: Tuple[Diagonal, ...]

    def __post_init__(self) -> None:
        if self.n < 3:
            raise InvalidSizeError(f"polygon size must be >= 3, got {self.n}")
        if len(self.diagonals) != self.n - 3:
            raise InvalidArgumentError(
                f"a triangulation of a {self.n}-gon has {self.n - 3} diagonals,"
                f" got {len(self.diagonals)}"
            )
        if len(set(self.diagonals)) != len(self.diagonals):
            raise InvalidArgumentError("repeated diagonal")
        for d in self.diagonals:
            if d.n != self.n:
                raise InvalidArgumentError(f"diagonal {d} belongs to a {d.n}-gon")
        for d1, d2 in itertools.combinations(self.diagonals, 2):
            if d1.crosses(d2):
                raise InvalidArgumentError(f"diagonals {d1} and {d2} cross")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Iterable[int]]) -> Triangulation:
        "Build from arcs in either orientation."
        return cls(n, tuple(Diagonal.from_arc(n, a) for a in arcs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.n == other.n and frozenset(self.diagonals) == frozenset(
            other.diagonals
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.diagonals)))

    def __repr__(self) -> str:
        arcs = ", ".join("{" + ",".join(map(str, d.arc)) + "}" for d in self.diagonals)
        return f"Triangulation(n={self.n}, [{arcs}])"

    def key(self) -> Tuple[Arc, ...]:
        "Sorted canonical arcs; the enumeration order."
        return tuple(sorted(d.arc for d in self.diagonals))

    def index(self, d: Diagonal) -> int:
        "Slot (0-based) of a diagonal."
        try:
            return self.diagonals.index(d)
        except ValueError:
            raise NotFoundError(f"diagonal {d} is not in {self!r}") from None

    def sides(self) -> Tuple[Side, ...]:
        return tuple(Side(self.n, i) for i in range(1, self.n + 1))

    def edges(self) -> Tuple[Edge, ...]:
        return self.sides() + self.diagonals

    def replace(self, old: Diagonal, new: Diagonal) -> Triangulation:
        "Swap `old` for `new` keeping the slot."
        slot = self.index(old)
        diagonals = list(self.diagonals)
        diagonals[slot] = new
        return Triangulation(self.n, tuple(diagonals))

    def reorder(self, order: Sequence[Diagonal]) -> Triangulation:
        "Same triangulation with the slot order of `order`."
        t = Triangulation(self.n, tuple(order))
        if t != self:
            raise InvalidArgumentError(f"{t!r} is not a reordering of {self!r}")
        return t


@dataclass(frozen=True)
class Triangle:
    """
    A triangle of a triangulation.

    Attributes:
        vertices : polygon vertices $a < b < c$
        edges : the edges $(ab, bc, ca)$
        arcs : for each edge, the arc of sides it spans seen from this
            triangle; the three arcs partition $\\{1, \\ldots, n\\}$
    """

    vertices: Tuple[int, int, int]
    edges: Tuple[Edge, Edge, Edge]
    arcs: Tuple[Arc, Arc, Arc]

    def other_edges(self, e: Edge) -> Tuple[Edge, Edge]:
        "The two edges different from `e`, in triangle order."
        if e not in self.edges:
            raise NotFoundError(f"{e} is not an edge of {self}")
        i = self.edges.index(e)
        return (self.edges[(i + 1) % 3], self.edges[(i + 2) % 3])

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.edges) + ")"


def _triangle(n: int, a: int, b: int, c: int) -> Triangle:
    arcs = (
        tuple(range(a + 1, b + 1)),
        tuple(range(b + 1, c + 1)),
        tuple(range(c + 1, n + 1)) + tuple(range(1, a + 1)),
    )
    edges = (edge_between(n, a, b), edge_between(n, b, c), edge_between(n, c, a))
    return Triangle((a, b, c), edges, arcs)


@lru_cache(maxsize=None)
def triangles(T: Triangulation) -> Tuple[Triangle, ...]:
    """
    The $n-2$ triangles of a triangulation, sorted by vertices.

    Args:
        T: triangulation

    Returns:
        Tuple of triangles.
    """
    n = T.n
    pairs = {d.vertices for d in T.diagonals}
    pairs |= {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    out = [
        _triangle(n, a, b, c)
        for a, b, c in itertools.combinations(range(n), 3)
        if (a, b) in pairs and (b, c) in pairs and (a, c) in pairs
    ]
    if len(out) != n - 2:
        raise InvariantViolation(f"{T!r} has {len(out)} triangles, expected {n - 2}")
    return tuple(out)


def triangles_with(T: Triangulation, e: Edge) -> List[Triangle]:
    "Triangles having `e` as an edge (one for a side, two for a diagonal)."
    return [t for t in triangles(T) if e in t.edges]


def caterpillar(n: int) -> Triangulation:
    """
    The caterpillar $d_\\alpha = e_1 + \\cdots + e_{\\alpha+1}$.

    Args:
        n: polygon size

    Returns:
        The triangulation with arcs $\\{1..\\alpha+1\\}$, $\\alpha = 1..n-3$.
    """
    if n < 3:
        raise InvalidSizeError(f"polygon size must be >= 3, got {n}")
    return Triangulation(
        n, tuple(Diagonal(n, tuple(range(1, a + 2))) for a in range(1, n - 2))
    )


@lru_cache(maxsize=None)
def _sub_triangulations(i: int, j: int) -> Tuple[FrozenSet[VertexPair], ...]:
    # diagonal sets of the sub-polygon on vertices i..j (edge (i, j) included)
    if j - i < 2:
        return (frozenset(),)
    out = []
    for k in range(i + 1, j):
        chords = set()
        if k - i >= 2:
            chords.add((i, k))
        if j - k >= 2:
            chords.add((k, j))
        for left in _sub_triangulations(i, k):
            for right in _sub_triangulations(k, j):
                out.append(frozenset(chords) | left | right)
    return tuple(out)


def enumerate_triangulations(
    n: int, max_n: int = MAX_TRIANGULATION_N
) -> List[Triangulation]:
    """
    All triangulations of the n-gon, each once.

    Args:
        n: polygon size
        max_n: size limit

    Returns:
        Triangulations sorted lexicographically by sorted arc lists.
    """
    if n < 3:
        raise InvalidSizeError(f"polygon size must be >= 3, got {n}")
    if n > max_n:
        raise ResourceLimitError(f"n={n} exceeds the configured maximum {max_n}")
    out = []
    for pairs in _sub_triangulations(0, n - 1):
        diagonals = sorted(Diagonal.from_vertices(n, p, q) for p, q in pairs)
        out.append(Triangulation(n, tuple(diagonals)))
    out.sort(key=lambda t: t.key())
    logger.debug("enumerated %d triangulations of the %d-gon", len(out), n)
    return out


@dataclass(frozen=True)
class TrivalentTree:
    """
    Dual graph of a triangulation.

    Leaves are the nodes `("leaf", i)`, internal vertices the nodes
    `("tri", k)` (the k-th triangle); every graph edge carries its `label`,
    a `Side` for leaf edges and a `Diagonal` for internal edges.
    """

    n: int
    leaves: Tuple[Side, ...]
    internal_edges: Tuple[Diagonal, ...]
    graph: Any = field(compare=False, repr=False)

    def internal_vertices(self) -> List[Any]:
        return [v for v in self.graph.nodes if v[0] == "tri"]

    def degree(self, v: Any) -> int:
        return int(self.graph.degree(v))


@lru_cache(maxsize=None)
def dual_tree(T: Triangulation) -> TrivalentTree:
    """
    The dual trivalent tree $\\Gamma$ of a triangulation.

    Args:
        T: triangulation

    Returns:
        Tree with leaves $e_1, \\ldots, e_n$ and internal edges the diagonals.
    """
    g = nx.Graph()
    tris = triangles(T)
    owner: Dict[Edge, List[int]] = {}
    for k, t in enumerate(tris):
        g.add_node(("tri", k))
        for e in t.edges:
            owner.setdefault(e, []).append(k)
    for i in range(1, T.n + 1):
        s = Side(T.n, i)
        (k,) = owner[s]
        g.add_edge(("leaf", i), ("tri", k), label=s)
    for d in T.diagonals:
        k1, k2 = owner[d]
        g.add_edge(("tri", k1), ("tri", k2), label=d)
    tree = TrivalentTree(T.n, T.sides(), T.diagonals, g)
    for v in tree.internal_vertices():
        if tree.degree(v) != 3:
            raise InvariantViolation(f"internal vertex {v} has degree {tree.degree(v)}")
    if not nx.is_tree(g):
        raise InvariantViolation("dual graph is not a tree")
    return tree


def leaf_path(tree: TrivalentTree, i: int, j: int) -> FrozenSet[Diagonal]:
    """
    Diagonals crossed by the path $\\gamma(i, j)$ between two leaves.

    Args:
        tree: dual tree
        i: first leaf
        j: second leaf

    Returns:
        Set of internal edges on the path.
    """
    if i == j:
        raise InvalidArgumentError("leaf path needs two distinct leaves")
    for k in (i, j):
        if not 1 <= k <= tree.n:
            raise InvalidArgumentError(f"leaf {k} out of range 1..{tree.n}")
    path = nx.shortest_path(tree.graph, ("leaf", i), ("leaf", j))
    labels = [tree.graph.edges[u, v]["label"] for u, v in zip(path, path[1:])]
    return frozenset(x for x in labels if isinstance(x, Diagonal))


@dataclass(frozen=True)
class WhiteheadMove:
    """
    Replacement of the diagonal `removed` of a quadrilateral by the other one.

    Attributes:
        removed : $d = \\pm(a_1 + a_2)$
        inserted : $d' = \\pm(a_2 + a_3)$
        quad : sides $(a_1, a_2, a_3, a_4)$ in cyclic order
        arcs : arcs $I_{a_1}, \\ldots, I_{a_4}$ partitioning $\\{1..n\\}$
        slot : 0-based slot of `removed` (kept by `inserted`)
    """

    removed: Diagonal
    inserted: Diagonal
    quad: Tuple[Edge, Edge, Edge, Edge]
    arcs: Tuple[Arc, Arc, Arc, Arc]
    slot: int

    @property
    def n(self) -> int:
        return self.removed.n

    def removed_arc(self) -> Arc:
        "$I_d = I_{a_1} \\cup I_{a_2}$"
        return tuple(sorted(self.arcs[0] + self.arcs[1]))

    def inserted_arc(self) -> Arc:
        "$I_{d'} = I_{a_1} \\cup I_{a_4}$"
        return tuple(sorted(self.arcs[0] + self.arcs[3]))

    def __str__(self) -> str:
        return f"{self.removed} -> {self.inserted}"


def whitehead_move(T: Triangulation, d: Diagonal) -> Tuple[Triangulation, WhiteheadMove]:
    """
    Flip the diagonal `d`.

    Args:
        T: triangulation
        d: one of its diagonals

    Returns:
        The flipped triangulation (same slot order) and the move record.
    """
    slot = T.index(d)
    n = T.n
    tris = triangles_with(T, d)
    if len(tris) != 2:
        raise InvariantViolation(f"diagonal {d} borders {len(tris)} triangles")
    p, q = d.vertices
    apexes = [next(v for v in t.vertices if v not in (p, q)) for t in tris]
    v0, v1, v2, v3 = sorted([p, q] + apexes)
    arcs = (
        tuple(range(v0 + 1, v1 + 1)),
        tuple(range(v1 + 1, v2 + 1)),
        tuple(range(v2 + 1, v3 + 1)),
        tuple(range(v3 + 1, n + 1)) + tuple(range(1, v0 + 1)),
    )
    sides = (
        edge_between(n, v0, v1),
        edge_between(n, v1, v2),
        edge_between(n, v2, v3),
        edge_between(n, v3, v0),
    )
    if (p, q) == (v0, v2):
        order = (0, 1, 2, 3)
        inserted = Diagonal.from_vertices(n, v1, v3)
    elif (p, q) == (v1, v3):
        order = (1, 2, 3, 0)
        inserted = Diagonal.from_vertices(n, v0, v2)
    else:
        raise InvariantViolation(f"{d} is not a diagonal of its quadrilateral")
    move = WhiteheadMove(
        removed=d,
        inserted=inserted,
        quad=tuple(sides[i] for i in order),  # type: ignore
        arcs=tuple(arcs[i] for i in order),  # type: ignore
        slot=slot,
    )
    return T.replace(d, inserted), move


def reverse_move(T: Triangulation, move: WhiteheadMove) -> WhiteheadMove:
    "The move undoing `move`, read on the flipped triangulation."
    flipped = T.replace(move.removed, move.inserted)
    return whitehead_move(flipped, move.inserted)[1]


@lru_cache(maxsize=None)
def flip_graph(n: int) -> Any:
    """
    The flip graph: nodes are triangulation keys, edges single Whitehead moves.

    Args:
        n: polygon size

    Returns:
        An `nx.Graph`.
    """
    g = nx.Graph()
    for t in enumerate_triangulations(n):
        g.add_node(t.key())
        for d in t.diagonals:
            g.add_edge(t.key(), whitehead_move(t, d)[0].key())
    return g


def flip_path(T1: Triangulation, T2: Triangulation) -> List[WhiteheadMove]:
    """
    A shortest sequence of Whitehead moves from `T1` to `T2`.

    Args:
        T1: source triangulation
        T2: target triangulation

    Returns:
        The moves, applied in order starting from `T1`.
    """
    if T1.n != T2.n:
        raise InvalidArgumentError(f"size mismatch: {T1.n} vs {T2.n}")
    if T1 == T2:
        return []
    keys = nx.shortest_path(flip_graph(T1.n), T1.key(), T2.key())
    moves = []
    current = T1
    for key in keys[1:]:
        wanted = set(key)
        (d,) = [x for x in current.diagonals if x.arc not in wanted]
        current, move = whitehead_move(current, d)
        moves.append(move)
    if current != T2:
        raise InvariantViolation("flip path does not end at the target")
    logger.debug("flip path of length %d from %r to %r", len(moves), T1, T2)
    return moves


def apply_moves(T: Triangulation, moves: Iterable[WhiteheadMove]) -> Triangulation:
    "Apply recorded moves in order."
    for m in moves:
        T = T.replace(m.removed, m.inserted)
    return T


def apply_flip_word(T: Triangulation, slots: Iterable[int]) -> Triangulation:
    """
    Flip the diagonals in the given 1-based slots, in order.

    Args:
        T: starting triangulation
        slots: 1-based diagonal slots

    Returns:
        The resulting triangulation.
    """
    for s in slots:
        if not 1 <= s <= len(T.diagonals):
            raise InvalidArgumentError(f"flip slot {s} out of range 1..{len(T.diagonals)}")
        T = whitehead_move(T, T.diagonals[s - 1])[0]
    return T


def adjacent_pairs(n: int) -> List[Tuple[Triangulation, Triangulation, WhiteheadMove]]:
    "Every (T, flipped T, move) over all triangulations and diagonals."
    out = []
    for t in enumerate_triangulations(n):
        for d in t.diagonals:
            t2, m = whitehead_move(t, d)
            out.append((t, t2, m))
    return out


def stage_ordering(T: Triangulation) -> List[Tuple[Diagonal, Arc]]:
    """
    Numbering and orientation of the diagonals for the degeneration in stages.

    The oriented arcs $J_1, \\ldots, J_{n-3}$ satisfy $|J_1| = n - 2$ and, for
    $\\alpha < \\beta$, either $J_\\alpha \\supset J_\\beta$ or
    $J_\\alpha \\cap J_\\beta = \\emptyset$.

    Args:
        T: triangulation

    Returns:
        Pairs (diagonal, oriented arc) in stage order.
    """
    if not T.diagonals:
        return []
    ears = []
    for t in triangles(T):
        sides = [e for e in t.edges if isinstance(e, Side)]
        if len(sides) == 2:
            ears.append(frozenset(s.index for s in sides))
    # prefer the ear at e_n, so every arc is canonical
    ear = max(ears, key=lambda s: (T.n in s, sorted(s)))
    staged = []
    for d in T.diagonals:
        arc = d.arc if ear.isdisjoint(d.arc) else d.complement
        staged.append((d, tuple(sorted(arc))))
    staged.sort(key=lambda x: (-len(x[1]), x[1]))
    return staged


def triangulation_to_json(T: Triangulation) -> Dict[str, Any]:
    "JSON encoding `{\"n\": n, \"diagonals\": [[i, ...], ...]}` in slot order."
    return {"n": T.n, "diagonals": [list(d.arc) for d in T.diagonals]}


def triangulation_from_json(data: Dict[str, Any]) -> Triangulation:
    "Inverse of `triangulation_to_json`; arcs may use either orientation."
    if set(data) != {"n", "diagonals"}:
        raise InvalidArgumentError(f"bad triangulation fields {sorted(data)}")
    return Triangulation.from_arcs(int(data["n"]), data["diagonals"])
