from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import yaml

from fv_solver.artifacts import fmt_float

from .contracts import ErrorSeries, ExperimentReport, SweepResult


def serialize_error_series_csv(series: ErrorSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("t", "elf", "eel"))
    for t, elf, eel in zip(series.times, series.elf, series.eel):
        w.writerow((fmt_float(t), fmt_float(elf), fmt_float(eel)))
    return buf.getvalue()


def write_error_series_csv(*, series: ErrorSeries, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(serialize_error_series_csv(series), encoding="utf-8")


def serialize_report_json(report: ExperimentReport) -> str:
    payload: dict[str, Any] = report.to_dict()
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def write_report_json(*, report: ExperimentReport, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(serialize_report_json(report), encoding="utf-8")


def read_report_json(path: Path) -> dict[str, Any]:
    payload = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(payload, dict) or not isinstance(payload.get("config"), dict):
        raise ValueError(f"{path} is not an experiment report")
    return payload


def _cell(v: float | None) -> str:
    return "n/a" if v is None else f"{v:.4e}"


def render_report_markdown(report: ExperimentReport) -> str:
    """
    Tables for people, then the machine-readable summary as a fenced YAML block.
    """

    cfg = report.config
    lines = [f"# Experiment `{cfg.get('name')}`", ""]
    lines.append(f"- problem: `{cfg.get('problem')}`, profile: `{cfg.get('profile')}`")
    lines.append(f"- status: {'ok' if report.ok else 'FAILED'}")
    lines.append("")

    if report.series is not None:
        header = ["t", "ELF (PINN vs LF)", "EEL (PINN vs LE)", "LF vs LE"]
        exact_keys = sorted(report.exact_errors)
        header += [f"{k} vs exact" for k in exact_keys]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "---|" * len(header))
        for i, t in enumerate(report.series.times):
            row = [f"{t:g}", _cell(report.series.elf[i]), _cell(report.series.eel[i])]
            row.append(_cell(report.cross_scheme[i]) if i < len(report.cross_scheme) else "n/a")
            row += [_cell(report.exact_errors[k][i]) for k in exact_keys]
            lines.append("| " + " | ".join(row) + " |")
        lines.append("")

    if report.entropy:
        lines.append("| t_early | t_late | u_left | u_right | speed | ± | admissible |")
        lines.append("|---|---|---|---|---|---|---|")
        for v in report.entropy:
            lines.append(
                f"| {v.t_early:g} | {v.t_late:g} | {v.u_left:.4f} | {v.u_right:.4f} "
                f"| {v.speed:.4f} | {v.speed_resolution:.4f} | {v.admissible} |"
            )
        lines.append("")

    for e in report.errors:
        lines.append(f"- error[{e.code}]: {e.message}")
    if report.errors:
        lines.append("")

    if report.config_source is not None:
        lines.append("## Experiment document")
        lines.append("")
        lines.append("```yaml")
        lines.append(report.config_source.rstrip("\n"))
        lines.append("```")
        lines.append("")

    summary = {
        "ok": report.ok,
        "config": cfg,
        "mean_elf": report.series.mean_elf if report.series is not None else None,
        "mean_eel": report.series.mean_eel if report.series is not None else None,
        "final_loss_f": report.final_loss_f,
        "final_loss_u": report.final_loss_u,
        "timings": report.timings,
        "artifacts": report.artifacts,
    }
    lines.append("```yaml")
    lines.append(yaml.safe_dump(summary, sort_keys=True, default_flow_style=False).rstrip("\n"))
    lines.append("```")
    return "\n".join(lines) + "\n"


def write_report_markdown(*, report: ExperimentReport, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(render_report_markdown(report), encoding="utf-8")


def serialize_sweep_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("width", "seed", "mean_eel", "mean_elf"))
    for r in result.rows:
        w.writerow((r.width, r.seed, fmt_float(r.mean_eel), fmt_float(r.mean_elf)))
    return buf.getvalue()


def write_sweep_csv(*, result: SweepResult, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(serialize_sweep_csv(result), encoding="utf-8")
