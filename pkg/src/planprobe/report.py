"""Report emission: JSON, one-row-per-case CSV and markdown tables."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
from pathlib import Path
from typing import Any, Iterable

from .campaign import CampaignConfig, CampaignReport, CaseResult, LevelResult, summarize
from .dissect import Cause
from .harness.runner import ErrorType

FORMATS = ("json", "csv", "markdown")
CASE_FIELDS = [f.name for f in dataclasses.fields(CaseResult)]


def report_to_dict(report: CampaignReport) -> dict[str, Any]:
    return {
        "kind": report.kind,
        "config": report.config.to_dict(),
        "summary": report.summary(),
        "levels": [dict(dataclasses.asdict(lv), success_rate=round(lv.success_rate, 6)) for lv in report.levels],
        "capability_limit": report.capability_limit,
        "truncated": report.truncated,
        "cases": [dataclasses.asdict(c) for c in report.cases],
    }


def report_from_dict(d: dict[str, Any]) -> CampaignReport:
    levels = [LevelResult(**{k: v for k, v in lv.items() if k != "success_rate"}) for lv in d["levels"]]
    return CampaignReport(CampaignConfig.from_dict(d["config"]), d["kind"],
                          [CaseResult(**c) for c in d["cases"]], levels, d["capability_limit"],
                          d["truncated"], d["summary"].get("wall_time", 0.0))


def cases_to_csv(cases: Iterable[CaseResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CASE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for c in cases:
        writer.writerow({k: ("" if v is None else v) for k, v in dataclasses.asdict(c).items()})
    return buf.getvalue()


def cases_from_csv(text: str) -> list[CaseResult]:
    types = {f.name: f.type for f in dataclasses.fields(CaseResult)}
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        values: dict[str, Any] = {}
        for key, raw in row.items():
            kind = str(types[key])
            if raw == "":
                values[key] = None if "None" in kind else ("" if kind == "str" else raw)
            elif kind.startswith("int"):
                values[key] = int(raw)
            elif kind.startswith("float"):
                values[key] = float(raw)
            else:
                values[key] = raw
        out.append(CaseResult(**values))
    return out


def _table(header: list[str], rows: Iterable[Iterable[Any]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(x) for x in row) + " |" for row in rows]
    return "\n".join(lines)


def _pct(k: int, total: int) -> str:
    return f"{100 * k / total:.1f}%" if total else "0.0%"


def report_to_markdown(report: CampaignReport) -> str:
    s = report.summary()
    cfg = report.config
    parts = [f"# Campaign report ({report.kind}, {cfg.mode.value} mode, agent `{cfg.agent}`)", ""]
    parts += ["## Overview", "",
              _table(["Generated", "Errors", "Error rate", "Solver-Count", "Solver-Time (s)",
                      "Synthesis-Time (s)", "Agent-Time (s)"],
                     [[s["generated"], s["erroneous"], _pct(s["erroneous"], s["generated"]), s["solver_calls"],
                       f"{s['solver_time']:.3f}", f"{s['synthesis_time']:.3f}", f"{s['agent_time']:.3f}"]]),
              "", f"Generation failures: {s['generation_failures']}. "
              f"Mean synthesis time: {s['mean_synthesis_ms']:.2f} ms per case.", ""]
    types = s["error_types"]
    parts += ["## Error types", "",
              _table(["Error type", "Cases", "Share"],
                     [[t.value, types.get(t.value, 0), _pct(types.get(t.value, 0), s["erroneous"])]
                      for t in ErrorType]), ""]
    if s["root_causes"]:
        causes = s["root_causes"]
        labels = [c.value for c in Cause] + [k for k in causes if k not in {c.value for c in Cause}]
        parts += ["## Root causes", "",
                  _table(["Cause", "Cases", "Share"],
                         [[c, causes.get(c, 0), _pct(causes.get(c, 0), s["erroneous"])] for c in labels]), ""]
    parts += [f"## Top-{cfg.top_topics} error-prone topics", ""]
    parts += [_table(["Rank", "Topic", "Errors"],
                     [[i + 1, t, k] for i, (t, k) in enumerate(s["top_topics"])]) if s["top_topics"]
              else "No erroneous cases.", ""]
    if report.levels:
        parts += ["## Success rate per action count", "",
                  _table(["Actions", "Samples", "Correct", "Erroneous", "Success rate"],
                         [[lv.n, lv.samples, lv.correct, lv.erroneous, f"{lv.success_rate:.3f}"]
                          for lv in report.levels]), "",
                  f"Capability limit (first level below {cfg.threshold:.0%} success): "
                  f"{report.capability_limit if report.capability_limit is not None else 'none reached'}"
                  + (" (stopped by the time budget)" if report.truncated else ""), ""]
    return "\n".join(parts)


def emit_report(report: CampaignReport, out_dir: str | Path, formats: Iterable[str] = FORMATS,
                stem: str = "report") -> dict[str, Path]:
    """Write the report in each requested format; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    for fmt in formats:
        if fmt == "json":
            path = out / f"{stem}.json"
            path.write_text(json.dumps(report_to_dict(report), indent=1) + "\n")
        elif fmt == "csv":
            path = out / f"{stem}.csv"
            path.write_text(cases_to_csv(report.cases))
        elif fmt == "markdown":
            path = out / f"{stem}.md"
            path.write_text(report_to_markdown(report))
        else:
            raise ValueError(f"unknown report format {fmt!r}")
        written[fmt] = path
    return written


def csv_summary(path: str | Path, top: int = 5) -> dict[str, Any]:
    """Aggregates recomputed from a CSV file (used to cross-check formats)."""
    return summarize(cases_from_csv(Path(path).read_text()), top)
