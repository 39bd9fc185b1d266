"""Run reports and their CSV/JSON emission.

curve.csv and report.json are written with repr-exact floats so reruns with
an identical seed/config produce byte-identical files.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

__all__ = ["RunReport", "emit_report", "load_report"]


@dataclass
class RunReport:
    task: str
    config: dict
    seed: int
    loss_history: list[float]
    metrics: dict
    wall_time_s: float
    accuracy_history: list[float] | None = None
    predictions: list[list[float]] | None = None
    notes: list[str] = field(default_factory=list)


def emit_report(report: RunReport, out_dir) -> dict[str, Path]:
    """Write curve.csv, report.json, and (when present) predictions.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    curve = out / "curve.csv"
    with_acc = report.accuracy_history is not None
    lines = ["step,loss,accuracy" if with_acc else "step,loss"]
    for i, loss in enumerate(report.loss_history):
        row = f"{i},{loss!r}"
        if with_acc:
            row += f",{report.accuracy_history[i]!r}"
        lines.append(row)
    curve.write_text("\n".join(lines) + "\n")
    written["curve"] = curve

    report_json = out / "report.json"
    report_json.write_text(json.dumps(asdict(report), indent=2) + "\n")
    written["report"] = report_json

    if report.predictions is not None:
        pred = out / "predictions.csv"
        rows = ["x,y_target,y_trained"]
        rows += [f"{x!r},{yt!r},{yp!r}" for x, yt, yp in report.predictions]
        pred.write_text("\n".join(rows) + "\n")
        written["predictions"] = pred
    return written


def load_report(path) -> RunReport:
    data = json.loads(Path(path).read_text())
    return RunReport(**data)
