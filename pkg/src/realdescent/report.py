"""Text and JSON rendering of descent reports."""

from __future__ import annotations

import json
from importlib import resources
from typing import Optional

from .descent import GENERIC, DescentReport, Projection

SCHEMA_NAME = "report_schema.json"


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath(SCHEMA_NAME).read_text("utf-8"))


def _field_name(report: DescentReport) -> str:
    return str(report.field)


def report_to_dict(report: DescentReport, *, timings: bool = False) -> dict:
    if report.w_status is None:
        w = {"status": "not-applicable", "generators": []}
    else:
        w = {"status": str(report.w_status), "generators": [str(g) for g in report.w_status.generators]}
    return {
        "branch": report.branch,
        "field": _field_name(report),
        "variables": list(report.z_context.names),
        "z_generators": [str(g) for g in report.z_generators],
        "r_components": None if report.r_components is None else [str(c) for c in report.r_components],
        "r_kind": report.r_kind,
        "w_status": w,
        "equality_notion": report.equality_notion,
        "certificates": {
            c.name: ({"pass": c.passed, "detail": c.detail} | ({"witness": c.witness} if c.witness else {}))
            for c in report.certificates
        },
        "notes": list(report.notes),
        "timings": {k: round(v, 6) for k, v in report.timings.items()} if timings else {},
        "passed": report.passed,
    }


def render_json(report: DescentReport, *, timings: bool = False) -> str:
    return json.dumps(report_to_dict(report, timings=timings), indent=2, ensure_ascii=False) + "\n"


def render_text(report: DescentReport, *, timings: bool = False) -> str:
    lines = [
        f"field: {_field_name(report)}",
        f"branch: {report.branch}",
        f"equality notion: {report.equality_notion}",
    ]
    over = "Q" if all(g.is_fixed() for g in report.z_generators) else _field_name(report)
    lines.append("")
    lines.append(
        f"Z: {len(report.z_generators)} generators over {over} in {' '.join(report.z_context.names)}"
    )
    lines += [f"  {g}" for g in report.z_generators]
    if report.branch == GENERIC:
        lines.append("")
        lines.append(f"R: {len(report.r_components)} components ({report.r_kind} onto Z)")
        lines += [f"  {t} = {c}" for t, c in zip(report.z_context.names, report.r_components)]
        lines.append("")
        if report.w_status.empty:
            lines.append("W: empty")
        else:
            lines.append(f"W: nonempty, {len(report.w_status.generators)} generators")
            lines += [f"  {g}" for g in report.w_status.generators]
    lines.append("")
    lines.append("certificates:")
    for c in report.certificates:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"  [{mark}] {c.name}: {c.detail}")
        if c.witness:
            lines.append(f"         witness: {c.witness}")
    if report.notes:
        lines.append("")
        lines += [f"note: {n}" for n in report.notes]
    if timings and report.timings:
        lines.append("")
        lines.append("timings (s):")
        lines += [f"  {k}: {v:.6f}" for k, v in report.timings.items()]
    lines.append("")
    lines.append("result: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def projection_to_dict(proj: Projection) -> dict:
    return {
        "kept": list(proj.kept),
        "generators": [str(g) for g in proj.ideal.generators],
        "birational_certified": proj.birational_certified,
        "note": proj.note,
    }


def render_projection(proj: Projection, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(projection_to_dict(proj), indent=2) + "\n"
    lines = [f"projection onto {' '.join(proj.kept)}: {len(proj.ideal.generators)} generators"]
    lines += [f"  {g}" for g in proj.ideal.generators]
    lines.append(f"note: {proj.note}")
    return "\n".join(lines) + "\n"
