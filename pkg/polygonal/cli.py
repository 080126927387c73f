"""
Command line: `polygonal <command> [action] [options]`.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .catalog import parse_side_lengths, parse_triangulation, triangulations
from .combinatorics import Triangulation, caterpillar, enumerate_triangulations, flip_path
from .config import DEFAULT_SAMPLES, FORMATS, MAX_EHRHART_DIM, RunConfig
from .errors import InvalidArgumentError, PolygonalError
from .gelfand_cetlin import ehx_form, gc_equivalence_check, gc_map
from .laurent import format_poly
from .operators import fmt_rational, rational
from .pluecker import (
    ToricIdeal,
    central_fiber,
    deformed_relations,
    fixed_points,
    format_relation,
    one_param_family,
    singular_strata,
)
from .polytope import (
    CoordinateFrame,
    bending_polytope,
    ehrhart_volume,
    lattice_count,
    moment_polytope,
    reflexivity_check,
    vertices,
)
from .potential import geometric_lift, potential, potential_terms
from .report import Report, to_plain
from .tropical import bending_path_plmap, path_plmap, transform_polytope_check
from .verify import SUITES, lift_report, plmap_report, run_suites

logger = logging.getLogger(__name__)

# (text, data, passed)
Output = Tuple[str, Any, bool]


def _fmt_point(p: Sequence[Any]) -> str:
    return "(" + ",".join(fmt_rational(x) for x in p) + ")"


def _arcs(T: Triangulation) -> str:
    return " ".join("{" + ",".join(map(str, d.arc)) + "}" for d in T.diagonals) or "{}"


def _gamma(config: RunConfig) -> Triangulation:
    return parse_triangulation(config.gamma, config.n)


def _pair(config: RunConfig) -> Tuple[Triangulation, Triangulation]:
    source = parse_triangulation(config.source or config.gamma, config.n)
    if config.target is None:
        raise InvalidArgumentError("--to is required")
    return source, parse_triangulation(config.target, config.n)


def _report_output(report: Report) -> Output:
    return report.render(), report.to_json(), report.passed


def cmd_triangulations(config: RunConfig) -> Output:
    ts = enumerate_triangulations(config.n)
    lines = [f"{i + 1}: {_arcs(t)}" for i, t in enumerate(ts)]
    data = [[list(a) for a in t.key()] for t in ts]
    return "\n".join(lines), {"n": config.n, "triangulations": data}, True


def cmd_polytope(config: RunConfig) -> Output:
    action = config.options["action"]
    T = _gamma(config)
    if action == "bending":
        r = parse_side_lengths(config.options.get("lengths"), config.n)
        P = bending_polytope(T, r).irredundant()
        verts = vertices(P)
        lines = [f"{label}: {h} >= 0" for h, label in zip(P.halfspaces, P.labels)]
        lines += [f"vertex {_fmt_point(v)}" for v in verts]
        return "\n".join(lines), {"polytope": P.to_json(), "vertices": verts}, True
    P = moment_polytope(T, config.perimeter)
    dilate = config.options.get("dilate") or 1
    if action == "hrep":
        lines = [f"{label}: {h} >= 0" for h, label in zip(P.halfspaces, P.labels)]
        return "\n".join(lines), P.to_json(), True
    if action == "vertices":
        verts = vertices(P.dilate(dilate))
        text = "\n".join(_fmt_point(v) for v in verts)
        return text, {"count": len(verts), "vertices": verts}, True
    if action == "lattice":
        count = lattice_count(P, dilate)
        return str(count), {"dilation": dilate, "count": count}, True
    if action == "volume":
        vol = ehrhart_volume(P.dilate(dilate), config.max_dim)
        return fmt_rational(vol), {"volume": vol}, True
    if not config.perimeter.denominator == 1:
        raise InvalidArgumentError("reflexivity needs an integral perimeter")
    ok, shift = reflexivity_check(T, int(config.perimeter))
    text = f"{str(ok).lower()} interior {_fmt_point(shift)}"
    return text, {"reflexive": ok, "interior": list(shift)}, ok


def cmd_plmap(config: RunConfig) -> Output:
    action = config.options["action"]
    T1, T2 = _pair(config)
    lengths = config.options.get("lengths")
    if lengths is not None:
        r = parse_side_lengths(lengths, config.n)
        pl, target = bending_path_plmap(T1, T2, r)
        P1, P2 = bending_polytope(T1, r), bending_polytope(target, r)
    else:
        pl, target = path_plmap(T1, T2, config.perimeter)
        P1 = moment_polytope(T1, config.perimeter)
        P2 = moment_polytope(target, config.perimeter)
    if action == "derive":
        moves = [str(m) for m in flip_path(T1, T2)]
        lines = [f"move {m}" for m in moves]
        lines += [f"u{i + 1}' = {e!r}" for i, e in enumerate(pl.coords)]
        data = {"moves": moves, "target": _arcs(target), "map": pl.to_json()}
        return "\n".join(lines), data, True
    return _report_output(transform_polytope_check(pl, P1, P2, volume=P1.dim <= config.max_dim))


def cmd_potential(config: RunConfig) -> Output:
    action = config.options["action"]
    if action == "emit":
        p = potential(_gamma(config))
        return format_poly(p), {"terms": list(potential_terms(p)), "poly": p.to_json()}, True
    if action == "lift":
        T1, T2 = _pair(config)
        rules = []
        current = T1
        for move in flip_path(T1, T2):
            rule = geometric_lift(move, current)
            rules.append(
                {
                    "move": str(move),
                    "pullback": str(rule.pullback),
                    "pushforward": str(rule.pushforward),
                }
            )
            current = current.replace(move.removed, move.inserted)
        lines = [f"{r['move']}: y = {r['pullback']}" for r in rules]
        return "\n".join(lines), rules, True
    T1, T2 = _pair(config)
    return _report_output(lift_report(config.n, T1, T2))


def _ideal_output(ideal: ToricIdeal) -> Output:
    lines = [format_relation(g) for g in ideal.generators]
    return "\n".join(lines), ideal.to_json(), True


def cmd_pluecker(config: RunConfig) -> Output:
    action = config.options["action"]
    T = _gamma(config)
    if action == "deform":
        stage = config.options.get("stage")
        rels = deformed_relations(T) if stage is None else one_param_family(T, stage)
        names = ("t",) if stage is not None else ()
        lines = [format_relation(r, names) for r in rels]
        return "\n".join(lines), [r.to_json() for r in rels], True
    if action == "central-fiber":
        return _ideal_output(central_fiber(T))
    if action == "fixed-points":
        pts = fixed_points(T)
        lines = [f"p{k}{l}: {_fmt_point(v)}" for (k, l), v in pts]
        return "\n".join(lines), [{"pair": [k, l], "image": v} for (k, l), v in pts], True
    strata = singular_strata(T)
    lines = [
        f"{s.diagonal}: " + " ".join(f"Z({a},{d})" for a, d in s.coordinates) for s in strata
    ]
    return "\n".join(lines), [s.to_json() for s in strata], True


def cmd_gc(config: RunConfig) -> Output:
    action = config.options["action"]
    if action == "verify":
        return _report_output(gc_equivalence_check(config.n, config.perimeter))
    if action == "ehx":
        report = ehx_form(config.n)
        text = report.render() + "\n" + " + ".join(report.counts["terms"])
        return text, report.to_json(), report.passed
    point = config.options.get("point")
    if point is None:
        raise InvalidArgumentError("gc map needs --point")
    frame = CoordinateFrame(caterpillar(config.n), config.perimeter)
    u = [rational(x) for x in point.split(",")]
    if len(u) != frame.dim:
        raise InvalidArgumentError(f"expected {frame.dim} coordinates, got {len(u)}")
    pattern = gc_map(frame, u)
    free = pattern.free()
    return _fmt_point(free), {"pattern": free, "interlacing": pattern.interlacing()}, True


def cmd_verify(config: RunConfig) -> Output:
    suite = config.options["suite"]
    if suite == "lift" and config.target is not None:
        T1, T2 = _pair(config)
        report = Report()
        report.lift = lift_report(config.n, T1, T2)
    elif suite == "plmap" and config.options.get("corrupt"):
        report = Report()
        report.plmap = plmap_report(config.n, config.perimeter, corrupt=True)
    else:
        samples = config.options.get("samples") or DEFAULT_SAMPLES
        report = run_suites(
            [suite], config.n, config.perimeter, config.seed, config.max_dim, samples
        )
    logger.info("verify %s: %s", suite, "pass" if report.passed else "fail")
    return _report_output(report)


COMMANDS: Dict[str, Callable[[RunConfig], Output]] = {
    "triangulations": cmd_triangulations,
    "polytope": cmd_polytope,
    "plmap": cmd_plmap,
    "potential": cmd_potential,
    "pluecker": cmd_pluecker,
    "gc": cmd_gc,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="polygon size")
    common.add_argument("--perimeter", help="|r| as p/q, defaults to n")
    common.add_argument(
        "--gamma",
        help="triangulation: " + ", ".join(triangulations) + ", arcs '2,3;2,3,4' or 'flip:1,2'",
    )
    common.add_argument("--caterpillar", dest="gamma", action="store_const", const="caterpillar")
    common.add_argument("--from", dest="source", help="source triangulation")
    common.add_argument("--to", dest="target", help="target triangulation")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--seed", type=int)
    common.add_argument("--max-dim", dest="max_dim", type=int, help=f"default {MAX_EHRHART_DIM}")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="polygonal",
        description="Triangulations, moment polytopes and toric degenerations of Gr(2, n).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("triangulations", parents=[common], help="list triangulations")

    p = sub.add_parser("polytope", parents=[common], help="moment and bending polytopes")
    p.add_argument(
        "action", choices=("hrep", "vertices", "lattice", "volume", "reflexive", "bending")
    )
    p.add_argument("--dilate", type=int)
    p.add_argument("--lengths", help="side lengths for the bending polytope")

    p = sub.add_parser("plmap", parents=[common], help="piecewise-linear transformations")
    p.add_argument("action", choices=("derive", "verify"))
    p.add_argument("--lengths", help="use bending coordinates with these side lengths")

    p = sub.add_parser("potential", parents=[common], help="potential functions and lifts")
    p.add_argument("action", choices=("emit", "lift", "lift-verify"))

    p = sub.add_parser("pluecker", parents=[common], help="deformed Pluecker relations")
    p.add_argument("action", choices=("deform", "central-fiber", "fixed-points", "strata"))
    p.add_argument("--stage", type=int, help="one-parameter family of this diagonal slot")

    p = sub.add_parser("gc", parents=[common], help="Gelfand-Cetlin comparison")
    p.add_argument("action", choices=("verify", "ehx", "map"))
    p.add_argument("--point", help="frame coordinates for 'map'")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + SUITES)
    p.add_argument("--samples", type=int)
    p.add_argument("--corrupt", action="store_true", help="negative control for plmap")
    return parser


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def render(config: RunConfig, out: Output) -> str:
    text, data, _ = out
    if config.format == "json":
        return json.dumps(to_plain(data), indent=2, sort_keys=True)
    return text


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    _configure_logging(ns.verbose)
    command = ns.command
    try:
        del ns.command
        config = RunConfig.from_namespace(ns)
        out = COMMANDS[command](config)
    except PolygonalError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(render(config, out))
    return 0 if out[2] else 1


if __name__ == "__main__":
    sys.exit(main())
