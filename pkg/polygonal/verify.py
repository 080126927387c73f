"""
Verification suites run by `polygonal verify`. Each returns a `Report`; none
raises on a failed check.
"""

from __future__ import annotations

import logging
import math
import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .combinatorics import (
    Triangulation,
    adjacent_pairs,
    caterpillar,
    enumerate_triangulations,
)
from .config import DEFAULT_SAMPLES, DEFAULT_SEED, MAX_EHRHART_DIM
from .errors import InvariantViolation
from .gelfand_cetlin import ehx_form, gc_equivalence_check
from .operators import Rational, fmt_rational
from .pluecker import central_fiber, deformed_relations, format_relation
from .polytope import (
    CoordinateFrame,
    ehrhart_volume,
    lattice_count,
    moment_polytope,
    predicted_vertices,
    reflexivity_check,
    vertices,
)
from .potential import lift_verify, tropical_check
from .report import Report
from .testing import IdentityTest
from .tropical import (
    PLMap,
    TropExpr,
    evaluate,
    integrality_check,
    path_plmap,
    transform_polytope_check,
    whitehead_plmap,
)

logger = logging.getLogger(__name__)

# the deformed relations of the pentagon caterpillar, quadruples in order
PENTAGON_CATERPILLAR = (
    "t1*Z12*Z34 - Z13*Z24 + Z14*Z23",
    "t1*Z12*Z35 - Z13*Z25 + Z15*Z23",
    "t1*t2*Z12*Z45 - Z14*Z25 + Z15*Z24",
    "t2*Z13*Z45 - Z14*Z35 + Z15*Z34",
    "t2*Z23*Z45 - Z24*Z35 + Z25*Z34",
)


def random_rationals(rng: random.Random, k: int) -> List[Fraction]:
    return [Fraction(rng.randint(-40, 40), rng.randint(1, 6)) for _ in range(k)]


def identities_report(seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> Report:
    """
    Check every identity of `IdentityTest` on seeded random rationals, both
    directly and through piecewise-linear expression graphs.

    Args:
        seed: random seed
        samples: inputs per identity

    Returns:
        Report with children `fraction` and `tropical`.
    """
    report = Report()
    fraction, tropical = Report(), Report()
    two_arg, four_arg = IdentityTest._tests()
    for arity, tests in ((2, two_arg), (4, four_arg)):
        for name, fn in tests:
            rng = random.Random(f"{seed}:{name}")
            points = [random_rationals(rng, arity) for _ in range(samples)]
            bad = next((p for p in points if _differ(fn(*p))), None)
            fraction.add_check(name, bad is None, f"{samples} samples", witness=bad)
            xs = [TropExpr.coordinate(arity, i) for i in range(arity)]
            lhs, rhs = fn(*xs)
            bad = next(
                (p for p in points if evaluate([lhs], p) != evaluate([rhs], p)), None
            )
            tropical.add_check(name, bad is None, f"{samples} samples", witness=bad)
    report.fraction = fraction
    report.tropical = tropical
    return report


def _differ(pair: Sequence[Fraction]) -> bool:
    return pair[0] != pair[1]


def triangulations_report(n: int) -> Report:
    "Triangulation count against the Catalan number $C_{n-2}$."
    report = Report()
    count = len(enumerate_triangulations(n))
    expected = math.comb(2 * (n - 2), n - 2) // (n - 1)
    report.counts["triangulations"] = count
    report.add_check("catalan", count == expected, f"{count} triangulations, expected {expected}")
    return report


def polytope_report(n: int, perimeter: Rational, max_dim: int = MAX_EHRHART_DIM) -> Report:
    """
    Lattice counts, volumes and vertices of every moment polytope, and
    reflexivity when $|r| = n$.

    Args:
        n: polygon size
        perimeter: $|r|$
        max_dim: Ehrhart dimension limit; volumes are skipped above it

    Returns:
        Report with checks `lattice`, `volume`, `vertices` and `reflexive`.
    """
    report = Report()
    ts = enumerate_triangulations(n)
    polys = [moment_polytope(t, perimeter) for t in ts]
    counts = [lattice_count(P) for P in polys]
    report.counts["lattice"] = counts[0]
    report.add_check(
        "lattice", len(set(counts)) == 1, f"{counts[0]} points over {len(ts)} triangulations",
        witness=None if len(set(counts)) == 1 else counts,
    )
    if polys[0].dim <= max_dim:
        vols = [ehrhart_volume(P, max_dim) for P in polys]
        report.counts["volume"] = vols[0]
        report.add_check(
            "volume", len(set(vols)) == 1, f"volume {fmt_rational(vols[0])}",
            witness=None if len(set(vols)) == 1 else vols,
        )
    bad = next(
        (t for t, P in zip(ts, polys) if set(vertices(P)) != set(predicted_vertices(t, perimeter))),
        None,
    )
    report.add_check(
        "vertices", bad is None, f"{n * (n - 1) // 2} fixed-point images",
        witness=None if bad is None else repr(bad),
    )
    if Fraction(perimeter) == n:
        bad = next((t for t in ts if not reflexivity_check(t)[0]), None)
        report.add_check(
            "reflexive", bad is None, "every polytope reflexive after the shift",
            witness=None if bad is None else repr(bad),
        )
    return report


def _pair_name(T1: Triangulation, T2: Triangulation) -> str:
    def arcs(t: Triangulation) -> str:
        return "/".join("".join(map(str, a)) for a in t.key()) or "-"

    return f"{arcs(T1)}->{arcs(T2)}"


def _per_pair(n: int, check: Callable[[Triangulation, Triangulation, object], Report]) -> Report:
    report = Report()
    for T1, T2, move in adjacent_pairs(n):
        setattr(report, _pair_name(T1, T2), check(T1, T2, move))
    return report


def plmap_report(n: int, perimeter: Rational, corrupt: bool = False) -> Report:
    """
    Every single-move map is an integral bijection on lattice points, and so
    is the path map between the first and last triangulation.

    Args:
        n: polygon size
        perimeter: $|r|$
        corrupt: shift the path map by one (negative control)

    Returns:
        Report with one child per adjacent pair and `path`.
    """

    def check(T1: Triangulation, T2: Triangulation, move: object) -> Report:
        frame = CoordinateFrame(T1, Fraction(perimeter))
        pl = whitehead_plmap(frame, move)  # type: ignore
        r = transform_polytope_check(
            pl, moment_polytope(T1, perimeter), moment_polytope(T2, perimeter), volume=False
        )
        r.add_check("integral", integrality_check(pl, frame), "integral leaves")
        return r

    report = _per_pair(n, check)
    ts = enumerate_triangulations(n)
    T1, T2 = ts[0], ts[-1]
    pl, target = path_plmap(T1, T2, perimeter)
    if corrupt:
        pl = _shifted(pl)
    report.path = transform_polytope_check(
        pl, moment_polytope(T1, perimeter), moment_polytope(target, perimeter), volume=False
    )
    return report


def _shifted(pl: PLMap) -> PLMap:
    coords = list(pl.coords)
    if coords:
        coords[0] = coords[0] + 1
    return PLMap(pl.dim, tuple(coords))


def lift_report(n: int, T1: Optional[Triangulation] = None, T2: Optional[Triangulation] = None) -> Report:
    "Geometric lifts for one pair, or for every adjacent pair."
    if T1 is not None and T2 is not None:
        report = Report()
        setattr(report, _pair_name(T1, T2), lift_verify(T1, T2))
        return report
    return _per_pair(n, lambda a, b, m: lift_verify(a, b))


def tropical_report(n: int, perimeter: Optional[Rational] = None) -> Report:
    "Tropicalized lifts against the Whitehead maps for every adjacent pair."
    return _per_pair(n, lambda a, b, m: tropical_check(a, m, perimeter))  # type: ignore


def pluecker_report(n: int) -> Report:
    """
    Every central fiber is binomial; for the pentagon caterpillar the
    relations also match their known form.
    """
    report = Report()
    failures: Dict[str, str] = {}
    ts = enumerate_triangulations(n)
    for t in ts:
        try:
            central_fiber(t)
        except InvariantViolation as err:
            failures[repr(t)] = str(err)
    report.add_check(
        "binomial", not failures, f"{len(ts)} triangulations", witness=failures or None
    )
    if n == 5:
        got = tuple(format_relation(r) for r in deformed_relations(caterpillar(5)))
        report.add_check(
            "pentagon", got == PENTAGON_CATERPILLAR, "caterpillar relations",
            witness=None if got == PENTAGON_CATERPILLAR else list(got),
        )
    return report


def gc_report(n: int, perimeter: Rational) -> Report:
    report = Report()
    report.equivalence = gc_equivalence_check(n, perimeter)
    report.ehx = ehx_form(n)
    return report


SUITES = ("identities", "triangulations", "polytope", "plmap", "lift", "tropical", "pluecker", "gc")


def run_suites(
    names: Sequence[str],
    n: int,
    perimeter: Rational,
    seed: int = DEFAULT_SEED,
    max_dim: int = MAX_EHRHART_DIM,
    samples: int = DEFAULT_SAMPLES,
) -> Report:
    """
    Run the named suites, in the order of `SUITES`.

    Args:
        names: suite names, or `all`
        n: polygon size
        perimeter: $|r|$
        seed: seed of the identity samples
        max_dim: Ehrhart dimension limit
        samples: inputs per identity

    Returns:
        One child report per suite.
    """
    wanted = SUITES if "all" in names else tuple(s for s in SUITES if s in names)
    report = Report()
    for name in wanted:
        if name == "gc" and n < 4:
            continue
        logger.info("running %s suite for n=%d", name, n)
        if name == "identities":
            child = identities_report(seed, samples)
        elif name == "triangulations":
            child = triangulations_report(n)
        elif name == "polytope":
            child = polytope_report(n, perimeter, max_dim)
        elif name == "plmap":
            child = plmap_report(n, perimeter)
        elif name == "lift":
            child = lift_report(n)
        elif name == "tropical":
            child = tropical_report(n, perimeter)
        elif name == "pluecker":
            child = pluecker_report(n)
        else:
            child = gc_report(n, perimeter)
        setattr(report, name, child)
    return report
