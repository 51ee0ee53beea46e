"""Experiment configuration and report serialization (JSON and CSV)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

import numpy as np

__all__ = ["ExperimentConfig", "ExperimentReport", "Result", "to_plain"]

FORMATS = ("json", "csv")


@dataclass
class ExperimentConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "json"
    seed: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass(frozen=True)
class Result:
    value: Any
    unit: str
    provenance: str


def to_plain(v):
    """JSON-safe copy: arrays become lists, non-finite floats become None."""
    if isinstance(v, dict):
        return {str(k): to_plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_plain(x) for x in v]
    if isinstance(v, np.ndarray):
        return to_plain(v.tolist())
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


@dataclass
class ExperimentReport:
    """Named results, each with a unit and a formula-level provenance string."""

    experiment: str
    inputs: dict
    results: dict
    version: str
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    passed: bool | None = None

    def __post_init__(self):
        for name, r in self.results.items():
            if not isinstance(r, Result) or not r.unit or not r.provenance:
                raise ValueError(f"result {name!r} needs a unit and a provenance string")

    @property
    def provenance(self) -> dict:
        return {k: r.provenance for k, r in self.results.items()}

    def to_dict(self) -> dict:
        d = {
            "experiment": self.experiment,
            "inputs": to_plain(self.inputs),
            "results": {k: {"value": to_plain(r.value), "unit": r.unit} for k, r in self.results.items()},
            "provenance": self.provenance,
            "version": self.version,
            "timestamp": self.timestamp,
        }
        if self.passed is not None:
            d["pass"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        """One row per scalar; series expand to ``name[i]`` rows. Floats use ``%.15e``."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["result", "value", "unit", "provenance"])
        for name in sorted(self.results):
            r = self.results[name]
            value = to_plain(r.value)
            if isinstance(value, list):
                for i, v in enumerate(value):
                    writer.writerow([f"{name}[{i}]", _fmt(v), r.unit, r.provenance])
            else:
                writer.writerow([name, _fmt(value), r.unit, r.provenance])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15e}"
    if v is None:
        return "nan"
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


def strip_timestamp(text: str) -> str:
    """JSON report text with the timestamp removed, for determinism comparisons."""
    d = json.loads(text)
    d.pop("timestamp", None)
    return json.dumps(d, sort_keys=True, indent=2)
