"""
The caterpillar as a Gelfand–Cetlin system: pattern coordinates, the pattern
polytope and the potential in pattern variables.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from . import operators
from .combinatorics import caterpillar
from .errors import InvalidArgumentError, InvalidSizeError, InvariantViolation
from .operators import Rational, fmt_rational
from .polytope import (
    AffineForm,
    CoordinateFrame,
    Polytope,
    lattice_points,
    moment_polytope,
)
from .potential import potential
from .report import Report

logger = logging.getLogger(__name__)

Entry = Tuple[int, int]


def entries(n: int) -> List[Entry]:
    """
    Free pattern entries $(k, j)$ for $\\lambda^{(k)}_j$ in row-major order:
    $\\lambda^{(1)}_1, \\lambda^{(2)}_1, \\lambda^{(2)}_2, \\ldots,
    \\lambda^{(n-2)}_2, \\lambda^{(n-1)}_2$.
    """
    if n < 4:
        raise InvalidSizeError(f"Gelfand-Cetlin patterns need n >= 4, got {n}")
    out = [(1, 1)]
    for k in range(2, n - 1):
        out += [(k, 1), (k, 2)]
    out.append((n - 1, 2))
    return out


def entry_name(e: Entry) -> str:
    return f"l{e[0]}{e[1]}" if e[0] < 10 else f"l{e[0]},{e[1]}"


def arrows(n: int) -> List[Tuple[Entry, Entry]]:
    """
    The interlacing inequalities `(upper, lower)`, meaning upper $\\geq$ lower.

    The fixed entries are $(n-1, 1) = |r|$ and $(0, 0) = 0$.
    """
    out = []
    for k in range(1, n - 1):
        out.append(((k + 1, 1), (k, 1)))
        out.append(((k, 1), (k + 1, 2)))
        if k >= 2:
            out.append(((k + 1, 2), (k, 2)))
        if k == 2:
            out.append(((k, 2), (0, 0)))
    return out


@dataclass(frozen=True)
class GCPattern:
    """
    A two-row truncated pattern, fixed entries included.

    Attributes:
        n : polygon size
        perimeter : the fixed top entry $|r|$
        values : $\\lambda^{(k)}_j$ for every free entry
    """

    n: int
    perimeter: Fraction
    values: Dict[Entry, Fraction]

    def __getitem__(self, e: Entry) -> Fraction:
        if e == (self.n - 1, 1):
            return self.perimeter
        if e == (0, 0):
            return Fraction(0)
        return self.values[e]

    def free(self) -> Tuple[Fraction, ...]:
        return tuple(self.values[e] for e in entries(self.n))

    def interlacing(self) -> bool:
        return all(self[a] >= self[b] for a, b in arrows(self.n))


def _check_caterpillar(frame: CoordinateFrame) -> None:
    if frame.triangulation.diagonals != caterpillar(frame.n).diagonals:
        raise InvalidArgumentError(
            f"Gelfand-Cetlin coordinates need the caterpillar, got {frame.triangulation!r}"
        )


def gc_forms(frame: CoordinateFrame) -> List[AffineForm]:
    """
    Each free pattern entry as an affine form in frame coordinates.

    $\\lambda^{(1)}_1 = u_{e_1}$,
    $\\lambda^{(\\alpha+1)}_1 = -u_{d_\\alpha} + \\sum_{i \\leq \\alpha+1} u_{e_i}$,
    $\\lambda^{(\\alpha+1)}_2 = u_{d_\\alpha}$ and
    $\\lambda^{(n-1)}_2 = \\sum_{i \\leq n-1} u_{e_i} - |r|$.

    Args:
        frame: caterpillar frame

    Returns:
        Forms in the order of `entries`.
    """
    _check_caterpillar(frame)
    n, N = frame.n, frame.dim

    def partial(m: int) -> AffineForm:
        out = AffineForm.zero(N)
        for i in range(m):
            out = out + AffineForm.coordinate(N, i)
        return out

    forms = [AffineForm.coordinate(N, 0)]
    for alpha in range(1, n - 2):
        d = AffineForm.coordinate(N, n - 2 + alpha)
        forms.append(partial(alpha + 1) - d)
        forms.append(d)
    forms.append(partial(n - 1) - AffineForm.const(N, frame.perimeter))
    return forms


def gc_map(frame: CoordinateFrame, u: Sequence[Rational]) -> GCPattern:
    """
    Pattern coordinates of a point of the caterpillar moment polytope.

    Args:
        frame: caterpillar frame
        u: frame coordinates

    Returns:
        The pattern.
    """
    values = {e: f(u) for e, f in zip(entries(frame.n), gc_forms(frame))}
    return GCPattern(frame.n, frame.perimeter, values)


def gc_polytope(n: int, perimeter: Rational) -> Polytope:
    """
    The pattern polytope: one inequality per arrow.

    Args:
        n: polygon size, at least 4
        perimeter: fixed top entry

    Returns:
        Polytope in the $2n - 4$ free entries.
    """
    ents = entries(n)
    N = len(ents)
    c = operators.rational(perimeter)
    index = {e: i for i, e in enumerate(ents)}

    def value(e: Entry) -> AffineForm:
        if e == (n - 1, 1):
            return AffineForm.const(N, c)
        if e == (0, 0):
            return AffineForm.zero(N)
        return AffineForm.coordinate(N, index[e])

    forms, labels = [], []
    for upper, lower in arrows(n):
        forms.append(value(upper) - value(lower))
        labels.append(f"{_label(n, upper)} >= {_label(n, lower)}")
    return Polytope(N, tuple(forms), tuple(labels))


def _label(n: int, e: Entry) -> str:
    if e == (n - 1, 1):
        return "|r|"
    if e == (0, 0):
        return "0"
    return entry_name(e)


def linear_part(frame: CoordinateFrame) -> List[List[int]]:
    "Integer matrix of the linear part of `gc_forms`."
    rows = []
    for f in gc_forms(frame):
        if not all(operators.is_integral(x) for x in f.coeffs):
            raise InvariantViolation("non-integral Gelfand-Cetlin coefficient")
        rows.append([int(x) for x in f.coeffs])
    return rows


def gc_determinant(n: int) -> int:
    "Determinant of the linear part of the pattern map."
    frame = CoordinateFrame(caterpillar(n), Fraction(n))
    return int(sympy.Matrix(linear_part(frame)).det())


def gc_equivalence_check(n: int, perimeter: Optional[Rational] = None) -> Report:
    """
    Check that the pattern map is unimodular and bijects the lattice points
    of the caterpillar moment polytope onto those of the pattern polytope.

    Args:
        n: polygon size
        perimeter: $|r|$, defaults to $n$

    Returns:
        Report with checks `unimodular`, `lattice_bijection`, `interlacing`.
    """
    c = Fraction(n) if perimeter is None else operators.rational(perimeter)
    report = Report()
    det = gc_determinant(n)
    report.add_check("unimodular", abs(det) == 1, f"determinant {det}")
    frame = CoordinateFrame(caterpillar(n), c)
    src = lattice_points(moment_polytope(frame.triangulation, c))
    dst = lattice_points(gc_polytope(n, c))
    patterns = [gc_map(frame, p) for p in src]
    images = [p.free() for p in patterns]
    image_set = set(images)
    dst_set = set(tuple(Fraction(x) for x in p) for p in dst)
    report.counts["moment"] = len(src)
    report.counts["pattern"] = len(dst)
    ok = image_set == dst_set and len(image_set) == len(images)
    witness = None
    if not ok:
        witness = next(iter(image_set ^ dst_set), None)
    report.add_check(
        "lattice_bijection", ok, f"counts {len(src)} and {len(dst)}", witness=witness
    )
    bad = next((p.free() for p in patterns if not p.interlacing()), None)
    report.add_check("interlacing", bad is None, "every image is a pattern", witness=bad)
    logger.debug("Gelfand-Cetlin check n=%d |r|=%s: %s", n, c, report.passed)
    return report


# Monomials in pattern variables: exponents of the free entries, then Q.
PatternMonomial = Tuple[Fraction, ...]


def ehx_target(n: int) -> Counter:
    """
    $\\sum_{\\text{arrows}} y_{upper} / y_{lower}$ with $|r| \\mapsto Q$ and $0 \\mapsto 1$.

    Returns:
        Multiset of pattern monomials.
    """
    ents = entries(n)
    index = {e: i for i, e in enumerate(ents)}
    out: Counter = Counter()
    for upper, lower in arrows(n):
        e = [Fraction(0)] * (len(ents) + 1)
        for entry, sign in ((upper, 1), (lower, -1)):
            if entry == (n - 1, 1):
                e[-1] += sign
            elif entry != (0, 0):
                e[index[entry]] += sign
        out[tuple(e)] += 1
    return out


def ehx_substitution(n: int) -> List[Tuple[List[int], int]]:
    """
    The monomial change of variables: each pattern variable as
    $\\prod y^{a} Q^{b}$, the exponentiated pattern form.

    Returns:
        `(a, b)` per free entry, `a` over $(y_{e_1}, \\ldots, y_{d_{n-3}})$.
    """
    frame = CoordinateFrame(caterpillar(n), Fraction(1))
    out = []
    for f in gc_forms(frame):
        if not all(operators.is_integral(x) for x in f.coeffs + (f.constant,)):
            raise InvariantViolation("non-integral monomial exponent")
        out.append(([int(x) for x in f.coeffs], int(f.constant)))
    return out


def ehx_determinant(subst: List[Tuple[List[int], int]]) -> int:
    "Determinant of the exponent matrix of a monomial substitution."
    return int(sympy.Matrix([a for a, _ in subst]).det())


def ehx_potential(n: int) -> Counter:
    """
    The caterpillar potential rewritten in pattern variables.

    Returns:
        Multiset of pattern monomials.
    """
    subst = ehx_substitution(n)
    A = sympy.Matrix([a for a, _ in subst])
    b = sympy.Matrix([q for _, q in subst])
    inv_t = A.inv().T
    P = potential(caterpillar(n))
    q = P.space.q
    out: Counter = Counter()
    for e, coef in P.monomials():
        v = sympy.Matrix([sympy.Rational(x, 2) for x in e[:q]])
        w = inv_t * v
        q_exp = sympy.Rational(e[q], 2) - (w.T * b)[0, 0]
        mono = tuple(Fraction(int(x.p), int(x.q)) for x in list(w) + [q_exp])
        out[mono] += int(coef)
    return out


def format_pattern_monomial(n: int, e: PatternMonomial) -> str:
    names = [entry_name(x) for x in entries(n)] + ["Q"]
    top = [f"y{nm[1:]}" + ("" if k == 1 else f"^{fmt_rational(k)}") for nm, k in zip(names[:-1], e) if k > 0]
    bottom = [f"y{nm[1:]}" + ("" if k == -1 else f"^{fmt_rational(-k)}") for nm, k in zip(names[:-1], e) if k < 0]
    if e[-1] > 0:
        top.append("Q" if e[-1] == 1 else f"Q^{fmt_rational(e[-1])}")
    if e[-1] < 0:
        bottom.append("Q" if e[-1] == -1 else f"Q^{fmt_rational(-e[-1])}")
    text = "*".join(top) or "1"
    if bottom:
        text += "/" + "*".join(bottom)
    return text


def ehx_form(n: int) -> Report:
    """
    Compare the caterpillar potential in pattern variables with the sum of
    arrow ratios.

    Args:
        n: polygon size, at least 4

    Returns:
        Report with checks `monomial`, `terms` and `equal`.
    """
    report = Report()
    got = ehx_potential(n)
    want = ehx_target(n)
    subst = ehx_substitution(n)
    det = ehx_determinant(subst)
    report.add_check(
        "monomial", abs(det) == 1, f"{len(subst)} monomial substitutions, determinant {det}"
    )
    size = sum(got.values())
    report.add_check(
        "terms", size == 3 * (n - 2), f"{size} terms, expected {3 * (n - 2)}"
    )
    ok = got == want
    witness = None if ok else sorted(set(got) ^ set(want))[0]
    report.add_check("equal", ok, "potential matches the arrow sum", witness=witness)
    report.counts["terms"] = [format_pattern_monomial(n, e) for e in sorted(got)]
    return report
