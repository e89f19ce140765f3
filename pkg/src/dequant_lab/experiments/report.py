"""Run reports and their on-disk form.

Every float is rounded to 12 significant digits before it is written, so
reruns with the same config and seed give identical bytes.  Wall time is kept
out of ``summary.json`` and goes to ``timing.json``.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

SIG_DIGITS = 12

SUMMARY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["experiment", "seed", "version", "config", "passed", "checks", "metrics", "tables"],
    "additionalProperties": False,
    "properties": {
        "experiment": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "version": {"type": "string"},
        "config": {"type": "object"},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "criterion", "passed", "value", "threshold", "detail"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "criterion": {"type": ["integer", "null"]},
                    "passed": {"type": "boolean"},
                    "value": {"type": ["number", "null"]},
                    "threshold": {"type": ["number", "string", "null"]},
                    "detail": {"type": "string"},
                },
            },
        },
        "metrics": {"type": "object", "additionalProperties": {"type": ["number", "string", "boolean", "null"]}},
        "tables": {"type": "array", "items": {"type": "string"}},
    },
}


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    if not math.isfinite(x) or x == 0:
        return x
    return float(f"{x:.{digits}g}")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.{SIG_DIGITS}g}"
    if v is None:
        return ""
    return str(v)


def _jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return round_sig(v) if math.isfinite(v) else None
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: {len(values)} values for {len(self.columns)} columns")
        self.rows.append(list(values))


@dataclass
class Check:
    name: str
    passed: bool
    value: float | None = None
    threshold: float | str | None = None
    criterion: int | None = None
    detail: str = ""


@dataclass
class RunReport:
    experiment: str
    seed: int
    config: dict
    version: str
    tables: list[Table] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    runtime_checks: list[Check] = field(default_factory=list)
    wall_time_s: float = 0.0

    def table(self, name: str, columns: list[str]) -> Table:
        t = Table(name, columns)
        self.tables.append(t)
        return t

    def check(self, name: str, passed, value=None, threshold=None, criterion=None, detail="") -> Check:
        c = Check(name, bool(passed), None if value is None else float(value), threshold, criterion, detail)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(c.passed for c in self.runtime_checks)

    def summary(self) -> dict:
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "version": self.version,
            "config": _jsonable(self.config),
            "passed": all(c.passed for c in self.checks),
            "checks": [
                {"name": c.name, "criterion": c.criterion, "passed": c.passed,
                 "value": _jsonable(c.value), "threshold": _jsonable(c.threshold), "detail": c.detail}
                for c in self.checks
            ],
            "metrics": _jsonable(self.metrics),
            "tables": [f"{t.name}.csv" for t in self.tables],
        }


def write_csv(table: Table, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([_cell(v) for v in row])


def emit_report(report: RunReport, out_dir: str | Path) -> Path:
    """Write ``<out>/<experiment>/{*.csv, summary.json, timing.json}``."""
    target = Path(out_dir) / report.experiment
    try:
        target.mkdir(parents=True, exist_ok=True)
        for t in report.tables:
            write_csv(t, target / f"{t.name}.csv")
        with open(target / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report.summary(), fh, indent=2, sort_keys=True, allow_nan=False)
            fh.write("\n")
        timing = {
            "wall_time_s": round(report.wall_time_s, 3),
            "runtime_checks": [
                {"name": c.name, "passed": c.passed, "value": c.value, "threshold": c.threshold,
                 "criterion": c.criterion}
                for c in report.runtime_checks
            ],
        }
        with open(target / "timing.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(timing, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write report under {target}: {exc}") from exc
    return target
