"""Verification reports and plot-data files.

A report is one JSON document per check.  Everything that depends only on
the configuration goes into ``<check_id>.json`` (written with sorted keys,
so identical runs give byte-identical files); wall-clock data goes into a
``<check_id>.runtime.json`` sidecar.  Plot data is CSV with a leading
``# check_id=...`` line followed by a header row.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

STATUSES = ("pass", "inconclusive", "fail")
EXIT_CODES = {"pass": 0, "fail": 1, "inconclusive": 2}


def classify(min_margin: float, error_budget: float, margin_scale: float) -> str:
    """``inconclusive`` when the budget exceeds the margin scale, else pass/fail by sign."""
    if not math.isfinite(min_margin):
        return "pass" if min_margin == math.inf else "fail"
    if error_budget > margin_scale:
        return "inconclusive"
    return "pass" if min_margin >= -error_budget else "fail"


def worst_status(statuses: Sequence[str]) -> str:
    """``fail`` beats ``inconclusive`` beats ``pass``; an empty list passes."""
    rank = {"pass": 0, "inconclusive": 1, "fail": 2}
    return max(statuses, key=rank.__getitem__, default="pass")


def _clean(value):
    """Make a value JSON-safe: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(value, Mapping):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_clean(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else repr(v)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


@dataclass
class VerificationReport:
    check_id: str
    parameters: dict
    n_samples: int
    min_margin: float
    mean_margin: float
    error_budget: float
    status: str
    runtime_ms: int = 0
    notes: dict = field(default_factory=dict)

    @classmethod
    def from_margins(cls, check_id: str, margins, error_budget: float,
                     parameters: dict, *, margin_scale: float | None = None,
                     runtime_ms: int = 0, notes: dict | None = None) -> "VerificationReport":
        """Summarize per-sample margins; ``margin_scale`` defaults to ``max |margin|``."""
        m = np.asarray(margins, dtype=float).ravel()
        if m.size == 0:
            lo, mean = math.inf, math.nan
        else:
            lo, mean = float(np.min(m)), float(np.mean(m))
        if margin_scale is None:
            margin_scale = float(np.max(np.abs(m[np.isfinite(m)]))) if np.any(np.isfinite(m)) else 0.0
        status = classify(lo, error_budget, margin_scale) if m.size else "inconclusive"
        return cls(check_id, dict(parameters), int(m.size), lo, mean, float(error_budget),
                   status, int(runtime_ms), dict(notes or {}))

    def document(self) -> dict:
        """The deterministic part of the report."""
        d = asdict(self)
        d.pop("runtime_ms")
        return _clean(d)

    def runtime_document(self) -> dict:
        return {"check_id": self.check_id, "runtime_ms": self.runtime_ms,
                "written_at": time.strftime("%Y-%m-%dT%H:%M:%S%z")}

    @classmethod
    def from_document(cls, doc: Mapping, runtime_ms: int = 0) -> "VerificationReport":
        def num(x):
            return float(x) if not isinstance(x, str) else float(x.strip("'"))

        return cls(doc["check_id"], dict(doc["parameters"]), int(doc["n_samples"]),
                   num(doc["min_margin"]), num(doc["mean_margin"]), num(doc["error_budget"]),
                   doc["status"], runtime_ms, dict(doc.get("notes", {})))


def _stem(check_id: str) -> str:
    return check_id.replace("/", "_").replace(" ", "_")


def write_report(report: VerificationReport, out_dir: Path) -> Path:
    """Write ``<check_id>.json`` and its runtime sidecar; return the report path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{_stem(report.check_id)}.json"
    path.write_text(json.dumps(report.document(), indent=2, sort_keys=True) + "\n")
    (out_dir / f"{_stem(report.check_id)}.runtime.json").write_text(
        json.dumps(report.runtime_document(), indent=2, sort_keys=True) + "\n")
    return path


def read_reports(out_dir: Path) -> list[VerificationReport]:
    """Load every report in ``out_dir`` ordered by ``check_id``."""
    out = []
    for p in sorted(Path(out_dir).glob("*.json")):
        if p.name.endswith(".runtime.json") or p.name == "config.json":
            continue
        doc = json.loads(p.read_text())
        if "check_id" not in doc:
            continue
        side = p.with_name(p.stem + ".runtime.json")
        rt = json.loads(side.read_text())["runtime_ms"] if side.exists() else 0
        out.append(VerificationReport.from_document(doc, rt))
    return sorted(out, key=lambda r: r.check_id)


def emit_plot_data(report: VerificationReport, samples: Mapping[str, Sequence], path: Path) -> Path:
    """Write one CSV row per sample; an empty sample set gives a header-only file.

    The first line is ``# check_id=<id>``, the second the column names.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = list(samples.keys())
    arrays = [np.asarray(samples[c]) for c in cols]
    n = {a.shape[0] for a in arrays}
    if len(n) > 1:
        raise ValueError("sample columns have different lengths")
    with path.open("w", newline="") as fh:
        fh.write(f"# check_id={report.check_id}\n")
        w = csv.writer(fh)
        w.writerow(cols)
        for row in zip(*arrays):
            w.writerow([repr(float(x)) for x in row])
    return path


def summary_table(reports: Sequence[VerificationReport]) -> str:
    """Fixed-width text table of reports."""
    lines = [f"{'check_id':44s} {'status':12s} {'n':>6s} {'min_margin':>12s} {'budget':>10s}"]
    for r in reports:
        lines.append(f"{r.check_id:44s} {r.status:12s} {r.n_samples:6d} "
                     f"{r.min_margin:12.4g} {r.error_budget:10.3g}")
    return "\n".join(lines)
