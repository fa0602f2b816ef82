"""Text and JSON interchange formats for vertices, inequalities and reports.

Text formats (the interchange contract between commands):

    vertices                  inequalities
    --------------------      ------------------------
    # scenario N M K          # scenario N M K
    # representation corr     # representation corr
    1 1 1 1                   # kind inequality
    1 1 -1 -1                 2 : 1 1 1 -1
    ...                       ...

Vertex entries are exact rationals written p/q (integers without /q);
inequality lines are `bound : coefficients...` with normalized integers.
JSON mirrors carry the same data with rationals as strings, plus a
spec_version field.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import DimensionMismatch
from .inequality import Inequality
from .scenario import Behavior, Representation, Scenario
from .symmetry import InequalityClass

SPEC_VERSION = "1"


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _scenario_header(scenario: Scenario, rep: Representation) -> list[str]:
    return [
        f"# scenario {scenario.n_parties} {scenario.n_settings} "
        f"{scenario.n_outcomes}",
        f"# representation {rep.value}",
    ]


def _parse_header(lines):
    header = {}
    body = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "scenario":
                header["scenario"] = Scenario(*map(int, parts[1:4]))
            elif parts and parts[0] == "representation":
                header["representation"] = Representation.from_name(parts[1])
            elif parts and parts[0] == "kind":
                header["kind"] = parts[1]
            continue
        body.append(line)
    if "scenario" not in header or "representation" not in header:
        raise ValueError("missing scenario/representation header")
    return header, body


def write_vertices(behaviors) -> str:
    if not behaviors:
        raise ValueError("no vertices to write")
    first = behaviors[0]
    lines = _scenario_header(first.scenario, first.representation)
    for b in behaviors:
        lines.append(" ".join(format_fraction(x) for x in b.entries))
    return "\n".join(lines) + "\n"


def parse_vertices(text: str) -> list[Behavior]:
    header, body = _parse_header(text.splitlines())
    scenario = header["scenario"]
    rep = header["representation"]
    return [
        Behavior(scenario, rep, tuple(parse_fraction(x) for x in line.split()))
        for line in body
    ]


def vertices_to_json(behaviors) -> dict:
    first = behaviors[0]
    return {
        "spec_version": SPEC_VERSION,
        "scenario": _scenario_json(first.scenario),
        "representation": first.representation.value,
        "vertices": [[format_fraction(x) for x in b.entries]
                     for b in behaviors],
    }


def vertices_from_json(obj) -> list[Behavior]:
    scenario = _scenario_from_json(obj["scenario"])
    rep = Representation.from_name(obj["representation"])
    return [
        Behavior(scenario, rep, tuple(parse_fraction(x) for x in row))
        for row in obj["vertices"]
    ]


def write_inequalities(inequalities) -> str:
    if not inequalities:
        raise ValueError("no inequalities to write")
    first = inequalities[0]
    lines = _scenario_header(first.scenario, first.representation)
    lines.append("# kind inequality")
    for ineq in inequalities:
        norm = ineq.normalize()
        coeffs = " ".join(format_fraction(c) for c in norm.coefficients)
        lines.append(f"{format_fraction(norm.bound)} : {coeffs}")
    return "\n".join(lines) + "\n"


def parse_inequalities(text: str) -> list[Inequality]:
    header, body = _parse_header(text.splitlines())
    scenario = header["scenario"]
    rep = header["representation"]
    out = []
    for line in body:
        if ":" not in line:
            raise ValueError(f"malformed inequality line: {line!r}")
        bound_text, coeff_text = line.split(":", 1)
        out.append(Inequality(
            scenario, rep,
            tuple(parse_fraction(x) for x in coeff_text.split()),
            parse_fraction(bound_text.strip()),
        ))
    return out


def inequalities_to_json(inequalities) -> dict:
    first = inequalities[0]
    return {
        "spec_version": SPEC_VERSION,
        "scenario": _scenario_json(first.scenario),
        "representation": first.representation.value,
        "inequalities": [_inequality_json(i.normalize()) for i in inequalities],
    }


def inequalities_from_json(obj) -> list[Inequality]:
    scenario = _scenario_from_json(obj["scenario"])
    rep = Representation.from_name(obj["representation"])
    return [
        Inequality(scenario, rep,
                   tuple(parse_fraction(x) for x in item["coefficients"]),
                   parse_fraction(item["bound"]))
        for item in obj["inequalities"]
    ]


def classification_to_json(classes: list[InequalityClass]) -> dict:
    payload = {"spec_version": SPEC_VERSION, "classes": []}
    if classes:
        first = classes[0].canonical
        payload["scenario"] = _scenario_json(first.scenario)
        payload["representation"] = first.representation.value
    for cls in classes:
        payload["classes"].append({
            "canonical": _inequality_json(cls.canonical),
            "orbit_size": cls.orbit_size,
            "members_seen": cls.members_seen,
        })
    return payload


def classification_table(classes: list[InequalityClass]) -> str:
    lines = [f"{'class':>5}  {'orbit':>6}  {'seen':>5}  canonical inequality"]
    for k, cls in enumerate(classes):
        coeffs = " ".join(format_fraction(c) for c in cls.canonical.coefficients)
        lines.append(
            f"{k:>5}  {cls.orbit_size:>6}  {cls.members_seen:>5}  "
            f"{coeffs} <= {format_fraction(cls.canonical.bound)}"
        )
    return "\n".join(lines) + "\n"


def _scenario_json(scenario: Scenario) -> dict:
    return {
        "n_parties": scenario.n_parties,
        "n_settings": scenario.n_settings,
        "n_outcomes": scenario.n_outcomes,
    }


def _scenario_from_json(obj) -> Scenario:
    return Scenario(obj["n_parties"], obj["n_settings"], obj["n_outcomes"])


def _inequality_json(ineq: Inequality) -> dict:
    return {
        "bound": format_fraction(ineq.bound),
        "coefficients": [format_fraction(c) for c in ineq.coefficients],
    }


def _complex_matrix_json(matrix) -> dict:
    import numpy as np

    arr = np.asarray(matrix)
    return {
        "real": [[float(x) for x in row] for row in arr.real],
        "imag": [[float(x) for x in row] for row in arr.imag],
    }


def quantum_report_json(bell_value, ppt_reports, correlations) -> dict:
    """Model export: dims, state, observables, correlations, value, PPT."""
    model = bell_value.model
    return {
        "spec_version": SPEC_VERSION,
        "local_dims": list(model.local_dims),
        "state": _complex_matrix_json(model.density_matrix()),
        "observables": [
            [_complex_matrix_json(obs) for obs in per_setting]
            for per_setting in model.observables
        ],
        "correlations": [float(x) for x in correlations],
        "inequality": _inequality_json(bell_value.inequality.normalize()),
        "bell_value": bell_value.value,
        "violation_ratio": bell_value.violation_ratio,
        "converged": bell_value.converged,
        "restart_values": list(bell_value.restart_values),
        "ppt": [
            {
                "transposed_parties": list(report.transposed),
                "psd": report.psd,
                "min_eigenvalue": report.min_eigenvalue,
            }
            for report in ppt_reports
        ],
    }


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
