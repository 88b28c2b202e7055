"""Command line interface.

Subcommands::

    pedal-porism construct --scene S --algorithm pedal --start 0.3
    pedal-porism sweep     --scene S --algorithm polar --samples 360 --out report.csv
    pedal-porism figure    --scene S --preset pedal --out figure.svg
    pedal-porism verify    --scene S
    pedal-porism graph     --scene S --out scene.dot

Exit codes: 0 success, 1 error, 2 infertile start, 3 threshold failure.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pedal_porism import __version__
from pedal_porism.exceptions import InfertileStart, PorismError
from pedal_porism.figures import PRESETS, FigureSpec, write_svg
from pedal_porism.geometry import Triangle
from pedal_porism.pedal import homothety_report
from pedal_porism.porism import (
    Algorithm,
    Outcome,
    cross_family_consistency,
    evaluate_start,
    fertile_arcs,
    polar_porism_step,
    run_sweep,
)
from pedal_porism.scene import PorismScene, SceneBuilder
from pedal_porism.scene_file import SceneFile

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFERTILE = 2
EXIT_THRESHOLD = 3

CANONICAL_GAP = 1e-9
RADIUS_RESCALE = 100.0
MAX_CONSISTENCY_STARTS = 100


# Helpers
###########################


def _load(args: argparse.Namespace) -> Tuple[SceneFile, PorismScene, Dict[str, float]]:
    """Parse the scene file and resolve settings against the flags."""
    scene_file = SceneFile.from_path(args.scene)
    cli_values = {
        "inversion_radius_sq": args.inversion_r2,
        "tolerance_scale": args.tolerance_scale,
        "samples": getattr(args, "samples", None),
    }
    traces = scene_file.settings(cli_values)
    for trace in traces.values():
        logger.debug("Setting %s = %s (%s)", trace.name, trace.value, trace.reason)
    scene = scene_file.to_scene(cli_values)
    return scene_file, scene, {name: trace.value for name, trace in traces.items()}


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.12g}"


def _print_triangle(label: str, triangle: Triangle) -> None:
    for name, vertex in zip("ABC", triangle.vertices):
        print(f"{label} {name}: {_fmt(vertex.x)} {_fmt(vertex.y)}")


# Subcommands
###########################


def cmd_construct(args: argparse.Namespace) -> int:
    """Run one construction and print the triangle with its defects."""
    _, scene, _ = _load(args)
    algorithm = Algorithm.parse(args.algorithm)
    record, result = evaluate_start(scene, algorithm, args.start)

    if record.outcome == Outcome.INFERTILE:
        print(f"infertile start: {record.message}")
        return EXIT_INFERTILE
    if record.outcome == Outcome.DEGENERATE:
        print(f"error: degenerate construction: {record.message}", file=sys.stderr)
        return EXIT_ERROR

    print(f"algorithm: {algorithm.value}")
    print(f"start: {_fmt(args.start)}")
    _print_triangle("triangle", result.triangle)
    if result.companion is not None:
        label = "polar" if algorithm == Algorithm.POLAR else "negative-pedal"
        _print_triangle(label, result.companion)
    for name in ("tangency_defect", "center_err", "radius_err", "closure_defect"):
        print(f"{name}: {_fmt(getattr(record, name))}")

    if record.outcome == Outcome.FAILED:
        print(f"threshold failure: {record.message}")
        return EXIT_THRESHOLD
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Sweep the circumcircle and write the CSV report."""
    _, scene, settings = _load(args)
    report = run_sweep(scene, args.algorithm, settings["samples"])

    if args.out in (None, "-"):
        report.write_csv(sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            report.write_csv(handle)
        logger.info("Report written to %s", args.out)

    summary = report.summary()
    print(
        " ".join(f"{key}={value}" for key, value in summary.items()),
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_THRESHOLD


def cmd_figure(args: argparse.Namespace) -> int:
    """Write an SVG figure."""
    _, scene, _ = _load(args)
    if args.figure_spec:
        spec = FigureSpec.parse_config(Path(args.figure_spec).read_text(encoding="utf-8"))
    else:
        spec = PRESETS[args.preset]
    write_svg(scene, spec, args.out)
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    """Export the scene construction graph."""
    _, scene, _ = _load(args)
    builder = SceneBuilder(
        scene.seed_triangle,
        scene.pedal_point,
        inversion_radius_sq=scene.inversion.radius_sq,
        tolerance_scale=scene.tolerance_scale,
    )
    builder.resolve()
    if args.debug:
        builder.dump()
    builder.gen_graph(args.out, fmt=args.format)
    return EXIT_OK


# Verification
# ===============


def _check_invariants(scene: PorismScene, _: int) -> Tuple[bool, str]:
    gaps = scene.invariant_gaps()
    worst = max(gaps.values())
    detail = " ".join(f"{name}={value:.3g}" for name, value in gaps.items())
    return worst <= CANONICAL_GAP, detail


def _sweep_check(algorithm: Algorithm) -> Callable[[PorismScene, int], Tuple[bool, str]]:
    def check(scene: PorismScene, samples: int) -> Tuple[bool, str]:
        report = run_sweep(scene, algorithm, samples)
        allowed = 2 * math.ceil(samples / 1000)
        ok = report.passed and report.disagreements <= allowed
        detail = (
            f"constructed={report.count(Outcome.CONSTRUCTED)} "
            f"infertile={report.count(Outcome.INFERTILE)} "
            f"degenerate={report.count(Outcome.DEGENERATE)} "
            f"failed={report.count(Outcome.FAILED)} "
            f"disagreements={report.disagreements}"
        )
        return ok, detail

    return check


def _check_cross_family(scene: PorismScene, samples: int) -> Tuple[bool, str]:
    report = run_sweep(scene, Algorithm.PEDAL, samples)
    starts = [r.start_angle for r in report.records if r.outcome == Outcome.CONSTRUCTED]
    step = max(1, len(starts) // MAX_CONSISTENCY_STARTS)
    limit = scene.tol.defect_rel * scene.radius
    checked, failures = 0, 0
    for angle in starts[::step][:MAX_CONSISTENCY_STARTS]:
        try:
            record = cross_family_consistency(scene, scene.circumcircle.point_at(angle))
        except PorismError as err:
            logger.debug("Consistency skipped at %.6f: %s", angle, err)
            continue
        checked += 1
        if not record.passes(limit):
            failures += 1
    return checked > 0 and failures == 0, f"checked={checked} failures={failures}"


def _check_homothety(scene: PorismScene, _: int) -> Tuple[bool, str]:
    report = homothety_report(scene.config, scene.inversion)
    detail = (
        f"parallel={report.parallel_defect:.3g} spread={report.ratio_spread:.3g} "
        f"ratio={report.circle_ratio:.12g}"
    )
    return report.passes(), detail


def _check_inversion_radius(scene: PorismScene, _: int) -> Tuple[bool, str]:
    rescaled = scene.with_inversion_radius_sq(scene.inversion.radius_sq * RADIUS_RESCALE)
    worst = 0.0
    for vertex in scene.seed_triangle.vertices:
        first, _ = polar_porism_step(scene, vertex)
        second, _ = polar_porism_step(rescaled, vertex)
        worst = max(worst, first.vertex_gap(second))
    return worst <= scene.tol.defect_rel * scene.radius, f"max_vertex_gap={worst:.3g}"


VERIFY_CHECKS: List[Tuple[str, Callable[[PorismScene, int], Tuple[bool, str]]]] = [
    ("scene-invariants", _check_invariants),
    ("sweep-pedal", _sweep_check(Algorithm.PEDAL)),
    ("sweep-polar", _sweep_check(Algorithm.POLAR)),
    ("sweep-negative-pedal", _sweep_check(Algorithm.NEGATIVE_PEDAL)),
    ("cross-family", _check_cross_family),
    ("homothety", _check_homothety),
    ("inversion-radius", _check_inversion_radius),
]


def cmd_verify(args: argparse.Namespace) -> int:
    """Run every check against the scene and print one line per check."""
    _, scene, settings = _load(args)
    samples = settings["samples"]

    arcs = fertile_arcs(scene.circumcircle, scene.inconic)
    dual_arcs = fertile_arcs(scene.polar_circle, scene.polar_caustic)
    print(f"INFO fertile-arcs circumcircle fraction={arcs.fraction:.6f} arcs={arcs.as_list()}")
    print(f"INFO fertile-arcs polar-circle fraction={dual_arcs.fraction:.6f} arcs={dual_arcs.as_list()}")

    all_ok = True
    for name, check in VERIFY_CHECKS:
        try:
            ok, detail = check(scene, samples)
        except PorismError as err:
            ok, detail = False, f"error: {err}"
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'} {name} {detail}")
    return EXIT_OK if all_ok else EXIT_THRESHOLD


# Parser
###########################


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    parser = argparse.ArgumentParser(
        prog="pedal-porism",
        description="Pedal, polar and negative-pedal porisms of a triangle.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", required=True, help="Scene JSON file")
    common.add_argument("--inversion-r2", type=float, default=None, help="Squared inversion radius")
    common.add_argument(
        "--tolerance-scale",
        type=float,
        default=None,
        help="Multiplier of the defect threshold (default 1)",
    )
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    algorithms = [a.value.replace("_", "-") for a in Algorithm]
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", parents=[common], help="Construct one triangle")
    construct.add_argument("--algorithm", choices=algorithms, default="pedal")
    construct.add_argument("--start", type=float, required=True, help="Start angle in radians")
    construct.set_defaults(func=cmd_construct)

    sweep = sub.add_parser("sweep", parents=[common], help="Sweep start angles")
    sweep.add_argument("--algorithm", choices=algorithms, default="pedal")
    sweep.add_argument("--samples", type=int, default=None)
    sweep.add_argument("--out", default="-", help="CSV output path, '-' for stdout")
    sweep.set_defaults(func=cmd_sweep)

    figure = sub.add_parser("figure", parents=[common], help="Write an SVG figure")
    figure.add_argument("--preset", choices=sorted(PRESETS), default="pedal")
    figure.add_argument("--figure-spec", default=None, help="FigureSpec JSON file")
    figure.add_argument("--out", required=True, help="SVG output path")
    figure.set_defaults(func=cmd_figure)

    verify = sub.add_parser("verify", parents=[common], help="Run all checks")
    verify.add_argument("--samples", type=int, default=None)
    verify.set_defaults(func=cmd_verify)

    graph = sub.add_parser("graph", parents=[common], help="Export the construction graph")
    graph.add_argument("--out", default="scene.dot")
    graph.add_argument("--format", default="dot", help="pydot output format")
    graph.set_defaults(func=cmd_graph)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except InfertileStart as err:
        print(f"infertile start: {err}")
        return EXIT_INFERTILE
    except PorismError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
