"""Command-line orchestration of the vertex/facet/classification pipelines.

Exit codes: 0 success, 1 usage errors, 2 resource caps, 3 internal
invariant failures.  All randomness sits behind --seed; identical config
and seed produce byte-identical JSON reports.  Caps can also be set through
environment variables (BELLPOLY_STRATEGY_CAP, BELLPOLY_VERTEX_CAP,
BELLPOLY_DIM_CAP, BELLPOLY_GROUP_CAP, BELLPOLY_FAMILY_CAP).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import formats, geometry, quantum, scenario as scenario_mod, symmetry
from . import wernerwolf
from .errors import (
    BellPolyError,
    CapExceeded,
    DimensionLimit,
    InternalInvariantError,
    LimitExceeded,
)
from .geometry import FacetStatus
from .scenario import Representation, Scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPS = 2
EXIT_INTERNAL = 3

# scenarios small enough to enumerate without --allow-long
LONG_RUN_VERTEX_THRESHOLD = 16
LONG_RUN_DIM_THRESHOLD = 8


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"{name} must be an integer, got {raw!r}")


def _parse_scenario(text: str) -> Scenario:
    parts = text.split(",")
    if len(parts) != 3:
        raise _UsageError(f"--scenario expects N,M,K, got {text!r}")
    try:
        return Scenario(*(int(p) for p in parts))
    except ValueError as exc:
        raise _UsageError(str(exc))


def _write_output(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(args, text_payload: str, json_payload: dict):
    if args.format == "json":
        _write_output(formats.dump_json(json_payload), args.output)
    else:
        _write_output(text_payload, args.output)


def _config_echo(args, **extra) -> dict:
    config = {"command": args.command, "seed": getattr(args, "seed", 0)}
    for key in ("scenario", "rep", "restarts", "dims", "n", "group_cap",
                "strategy_cap", "vertex_cap", "dim_cap", "family_cap",
                "allow_long", "threads"):
        if hasattr(args, key):
            value = getattr(args, key)
            config[key] = value
    config.update(extra)
    return config


def build_parser() -> _Parser:
    parser = _Parser(prog="bellpoly",
                     description="Bell correlation polytope toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", "-o", default=None,
                       help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; outputs never depend on it")

    p = sub.add_parser("vertices", help="enumerate local polytope vertices")
    p.add_argument("--scenario", required=True)
    p.add_argument("--rep", choices=("corr", "prob"), required=True)
    p.add_argument("--strategy-cap", type=int,
                   default=_env_cap("BELLPOLY_STRATEGY_CAP",
                                    scenario_mod.DEFAULT_STRATEGY_CAP))
    add_common(p)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("facets", help="enumerate all facets from the vertices")
    p.add_argument("--scenario", required=True)
    p.add_argument("--rep", choices=("corr", "prob"), required=True)
    p.add_argument("--strategy-cap", type=int,
                   default=_env_cap("BELLPOLY_STRATEGY_CAP",
                                    scenario_mod.DEFAULT_STRATEGY_CAP))
    p.add_argument("--vertex-cap", type=int,
                   default=_env_cap("BELLPOLY_VERTEX_CAP",
                                    geometry.DEFAULT_VERTEX_LIMIT))
    p.add_argument("--dim-cap", type=int,
                   default=_env_cap("BELLPOLY_DIM_CAP",
                                    geometry.DEFAULT_DIM_LIMIT))
    p.add_argument("--allow-long", action="store_true",
                   help="permit enumerations beyond the quick desk scale")
    add_common(p)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("classify",
                       help="group an inequality file into relabeling classes")
    p.add_argument("inequalities", help="inequality file (text format)")
    p.add_argument("--group-cap", type=int,
                   default=_env_cap("BELLPOLY_GROUP_CAP",
                                    symmetry.DEFAULT_GROUP_CAP))
    p.add_argument("--plot-dir", default=None,
                   help="also render report figures into this directory")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check",
                       help="validity/tightness/facet report for inequalities")
    p.add_argument("inequalities", help="inequality file (text format)")
    p.add_argument("--points", default=None,
                   help="optional behavior file for membership queries")
    p.add_argument("--strategy-cap", type=int,
                   default=_env_cap("BELLPOLY_STRATEGY_CAP",
                                    scenario_mod.DEFAULT_STRATEGY_CAP))
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ww",
                       help="the complete (n,2,2) correlation facet family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--membership", default=None,
                   help="behavior file: report the nonlinear membership test "
                        "instead of enumerating")
    p.add_argument("--family-cap", type=int,
                   default=_env_cap("BELLPOLY_FAMILY_CAP",
                                    wernerwolf.DEFAULT_FAMILY_CAP))
    add_common(p)
    p.set_defaults(func=cmd_ww)

    p = sub.add_parser("quantum",
                       help="see-saw quantum bounds for correlation inequalities")
    p.add_argument("inequalities", help="inequality file (text format)")
    p.add_argument("--dims", default=None,
                   help="comma-separated local dimensions (default: qubits)")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--plot-dir", default=None,
                   help="also render convergence figures into this directory")
    add_common(p)
    p.set_defaults(func=cmd_quantum)

    return parser


def cmd_vertices(args) -> int:
    sc = _parse_scenario(args.scenario)
    rep = Representation.from_name(args.rep)
    vertices = scenario_mod.enumerate_vertices(sc, rep, cap=args.strategy_cap)
    json_payload = formats.vertices_to_json(vertices)
    json_payload["config"] = _config_echo(args)
    _emit(args, formats.write_vertices(vertices), json_payload)
    return EXIT_OK


def _require_allow_long(args, vertices, hull_dim):
    if args.allow_long:
        return
    if (len(vertices) > LONG_RUN_VERTEX_THRESHOLD
            or hull_dim > LONG_RUN_DIM_THRESHOLD):
        raise LimitExceeded(
            f"{len(vertices)} vertices in affine dimension {hull_dim} is a "
            "long-running enumeration; rerun with --allow-long"
        )


def cmd_facets(args) -> int:
    sc = _parse_scenario(args.scenario)
    rep = Representation.from_name(args.rep)
    vertices = scenario_mod.enumerate_vertices(sc, rep, cap=args.strategy_cap)
    hull = geometry.affine_hull(vertices)
    _require_allow_long(args, vertices, hull.dim)

    def progress(done, total, rays):
        print(f"facets: inserted {done}/{total} halfspaces, {rays} rays",
              file=sys.stderr)

    facets = geometry.enumerate_facets(
        vertices, max_vertices=args.vertex_cap, max_affine_dim=args.dim_cap,
        progress=progress if args.allow_long else None)
    json_payload = formats.inequalities_to_json(facets)
    json_payload["config"] = _config_echo(args, affine_dim=hull.dim,
                                          n_vertices=len(vertices))
    _emit(args, formats.write_inequalities(facets), json_payload)
    return EXIT_OK


def cmd_classify(args) -> int:
    ineqs = formats.parse_inequalities(Path(args.inequalities).read_text())
    classes = symmetry.classify(ineqs, cap=args.group_cap)
    json_payload = formats.classification_to_json(classes)
    json_payload["config"] = _config_echo(args, input=args.inequalities)
    text = formats.classification_table(classes)
    if args.plot_dir:
        from . import plots

        plot_dir = Path(args.plot_dir)
        plot_dir.mkdir(parents=True, exist_ok=True)
        figure = plots.render_class_sizes(classes, plot_dir / "class_sizes.png")
        json_payload["figures"] = [figure]
        text += f"figure: {figure}\n"
    _emit(args, text, json_payload)
    return EXIT_OK


def cmd_check(args) -> int:
    ineqs = formats.parse_inequalities(Path(args.inequalities).read_text())
    points = None
    if args.points:
        points = formats.parse_vertices(Path(args.points).read_text())
    lines = []
    report = []
    for k, ineq in enumerate(ineqs):
        vertices = scenario_mod.enumerate_vertices(
            ineq.scenario, ineq.representation, cap=args.strategy_cap)
        bound = geometry.classical_bound(
            ineq.coefficients, ineq.scenario, ineq.representation,
            cap=args.strategy_cap)
        status = geometry.is_facet(ineq, vertices)
        valid = status is not FacetStatus.INVALID
        tight = valid and bound == ineq.bound
        entry = {
            "index": k,
            "valid": valid,
            "tight": tight,
            "classical_bound": formats.format_fraction(bound),
            "facet": status is FacetStatus.FACET,
            "status": status.value,
        }
        if not valid:
            witness = max(vertices, key=ineq.evaluate)
            entry["witness_vertex"] = [formats.format_fraction(x)
                                       for x in witness.entries]
            lines.append(
                f"inequality {k}: INVALID, witness vertex "
                + " ".join(entry["witness_vertex"]))
        else:
            lines.append(
                f"inequality {k}: valid, classical bound "
                f"{entry['classical_bound']} "
                f"({'tight' if tight else 'not tight'}), {status.value}")
        if points is not None:
            verdicts = []
            for j, point in enumerate(points):
                value = ineq.evaluate(point)
                verdicts.append({
                    "point": j,
                    "value": formats.format_fraction(value),
                    "satisfied": value <= ineq.bound,
                })
            entry["points"] = verdicts
        report.append(entry)
    if points is not None:
        scenario = points[0].scenario
        rep = points[0].representation
        vertices = scenario_mod.enumerate_vertices(scenario, rep,
                                                   cap=args.strategy_cap)
        membership_report = []
        for j, point in enumerate(points):
            cert = geometry.membership(point, vertices)
            item = {"point": j, "verdict": cert.verdict.value}
            if cert.separating is not None:
                item["separating"] = formats._inequality_json(cert.separating)
            membership_report.append(item)
            lines.append(f"point {j}: {cert.verdict.value}")
        json_payload = {"spec_version": formats.SPEC_VERSION,
                        "inequalities": report,
                        "membership": membership_report}
    else:
        json_payload = {"spec_version": formats.SPEC_VERSION,
                        "inequalities": report}
    json_payload["config"] = _config_echo(args, input=args.inequalities,
                                          points=args.points)
    _emit(args, "\n".join(lines) + "\n", json_payload)
    return EXIT_OK


def cmd_ww(args) -> int:
    if args.membership:
        points = formats.parse_vertices(Path(args.membership).read_text())
        lines = []
        report = []
        for j, point in enumerate(points):
            inside, l1_value = wernerwolf.ww_membership(point)
            report.append({
                "point": j,
                "inside": inside,
                "l1_value": formats.format_fraction(l1_value),
                "threshold": formats.format_fraction(
                    wernerwolf.membership_threshold(point.scenario.n_parties)),
            })
            lines.append(
                f"point {j}: {'inside' if inside else 'outside'} "
                f"(l1 {formats.format_fraction(l1_value)})")
        json_payload = {"spec_version": formats.SPEC_VERSION,
                        "membership": report,
                        "config": _config_echo(args)}
        _emit(args, "\n".join(lines) + "\n", json_payload)
        return EXIT_OK
    ineqs = list(wernerwolf.ww_enumerate(args.n, cap=args.family_cap))
    json_payload = formats.inequalities_to_json(ineqs)
    json_payload["config"] = _config_echo(args)
    _emit(args, formats.write_inequalities(ineqs), json_payload)
    return EXIT_OK


def cmd_quantum(args) -> int:
    ineqs = formats.parse_inequalities(Path(args.inequalities).read_text())
    lines = []
    reports = []
    figures = []
    plot_dir = None
    if args.plot_dir:
        plot_dir = Path(args.plot_dir)
        plot_dir.mkdir(parents=True, exist_ok=True)
    for k, ineq in enumerate(ineqs):
        if args.dims:
            dims = tuple(int(d) for d in args.dims.split(","))
        else:
            dims = (2,) * ineq.scenario.n_parties
        result = quantum.quantum_value_seesaw(ineq, dims,
                                              restarts=args.restarts,
                                              seed=args.seed + k)
        correlations = quantum.model_correlations(result.model, ineq.scenario)
        ppt = quantum.ppt_check(result.model.density_matrix(), dims)
        payload = formats.quantum_report_json(result, ppt, correlations)
        payload["index"] = k
        reports.append(payload)
        ratio = ("" if result.violation_ratio is None
                 else f", ratio {result.violation_ratio:.6f}")
        lines.append(
            f"inequality {k}: value {result.value:.9f}{ratio}"
            f" ({'converged' if result.converged else 'not converged'})")
        if plot_dir is not None:
            figure = str(plot_dir / f"seesaw_{k}.png")
            from . import plots

            plots.render_seesaw_trace(result, figure)
            figures.append(figure)
    json_payload = {"spec_version": formats.SPEC_VERSION, "results": reports,
                    "config": _config_echo(args)}
    if figures:
        json_payload["figures"] = figures
        lines.extend(f"figure: {f}" for f in figures)
    _emit(args, "\n".join(lines) + "\n", json_payload)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"bellpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"bellpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, LimitExceeded, DimensionLimit) as exc:
        print(f"bellpoly: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except (InternalInvariantError, AssertionError) as exc:
        print(f"bellpoly: internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (BellPolyError, ValueError, OSError) as exc:
        print(f"bellpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
