"""Machine-readable experiment reports.

The JSON layout is fixed: ``{meta, schedule, series}`` where each series is
``{label, points: [{n, value, converged}], fit: {exponent, residual},
classification, bound?, bound_violations?}``.  ``fit`` is omitted for traces
with fewer than three points.  Serialization is byte-stable for identical
inputs: keys are sorted, floats use shortest round-trip repr, and wall-clock
timings are deliberately kept off the wire (they live on the Report object
and go to stderr in verbose mode).
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

from .asymptotics import DecayReport

__all__ = ["Series", "Report", "series_from_decay", "emit", "REPORT_SCHEMA"]


@dataclass
class Series:
    label: str
    points: list[dict]
    fit: dict | None = None
    classification: str | None = None
    bound: list[dict] | None = None
    bound_violations: list[int] | None = None
    point_seconds: list[float] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        obj = {
            "label": self.label,
            "points": self.points,
            "classification": self.classification,
        }
        if self.fit is not None:
            obj["fit"] = self.fit
        if self.bound is not None:
            obj["bound"] = self.bound
            obj["bound_violations"] = list(self.bound_violations or [])
        return obj


@dataclass
class Report:
    meta: dict
    schedule: list[int]
    series: list[Series]

    def to_json_obj(self) -> dict:
        return {
            "meta": self.meta,
            "schedule": self.schedule,
            "series": [s.to_json_obj() for s in self.series],
        }


def series_from_decay(label: str, rep: DecayReport) -> Series:
    points = [
        {"n": p.n, "value": p.value, "converged": p.converged} for p in rep.points
    ]
    fit = None
    if rep.fitted_exponent is not None:
        fit = {"exponent": rep.fitted_exponent, "residual": rep.fit_residual}
    bound = None
    violations = None
    if rep.bound_points is not None:
        bound = [{"n": n, "value": v} for n, v in rep.bound_points]
        violations = list(rep.bound_violations)
    return Series(
        label,
        points,
        fit,
        rep.classification,
        bound,
        violations,
        list(rep.point_seconds),
    )


def emit(report: Report, format: str = "json") -> bytes:
    """Serialize a report; byte-stable given an identical report."""
    if format == "json":
        text = json.dumps(report.to_json_obj(), sort_keys=True, indent=2)
        return (text + "\n").encode("utf-8")
    if format == "csv":
        buf = io.StringIO()
        buf.write("label,n,value,converged,classification,exponent,residual,bound\n")
        for s in report.series:
            fit = s.fit or {}
            exp = repr(fit["exponent"]) if "exponent" in fit else ""
            res = repr(fit["residual"]) if "residual" in fit else ""
            bounds = {b["n"]: b["value"] for b in (s.bound or [])}
            for p in s.points:
                b = repr(bounds[p["n"]]) if p["n"] in bounds else ""
                buf.write(
                    f"{s.label},{p['n']},{p['value']!r},{int(p['converged'])},"
                    f"{s.classification or ''},{exp},{res},{b}\n"
                )
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown output format {format!r}")


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "spintail experiment report",
    "type": "object",
    "required": ["meta", "schedule", "series"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["experiment", "seed", "method", "echo", "assertions"],
            "properties": {
                "experiment": {"type": "string"},
                "seed": {"type": "integer"},
                "method": {"type": "string"},
                "dense_cap": {"type": "integer"},
                "echo": {"type": "object"},
                "warnings": {"type": "array", "items": {"type": "string"}},
                "assertions": {
                    "type": "object",
                    "required": ["passed", "failures"],
                    "properties": {
                        "passed": {"type": "boolean"},
                        "failures": {"type": "array", "items": {"type": "string"}},
                    },
                },
            },
        },
        "schedule": {"type": "array", "items": {"type": "integer"}},
        "series": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "points", "classification"],
                "properties": {
                    "label": {"type": "string"},
                    "points": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["n", "value", "converged"],
                            "properties": {
                                "n": {"type": "integer"},
                                "value": {"type": "number"},
                                "converged": {"type": "boolean"},
                            },
                        },
                    },
                    "fit": {
                        "type": "object",
                        "required": ["exponent", "residual"],
                        "properties": {
                            "exponent": {"type": "number"},
                            "residual": {"type": "number"},
                        },
                    },
                    "classification": {
                        "enum": ["vanishing", "bounded_nonvanishing", "unconverged", None]
                    },
                    "bound": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["n", "value"],
                            "properties": {
                                "n": {"type": "integer"},
                                "value": {"type": "number"},
                            },
                        },
                    },
                    "bound_violations": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}
