"""Byte-stable JSON / CSV / Markdown emission of result tables."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = "filtra-report/1"
FORMATS = ("json", "csv", "markdown")


@dataclass
class Report:
    kind: str
    rows: list = field(default_factory=list)
    columns: list | None = None
    meta: dict = field(default_factory=dict)
    falsified: bool = False

    def column_names(self) -> list:
        if self.columns is not None:
            return list(self.columns)
        names: list = []
        for row in self.rows:
            for key in row:
                if key not in names:
                    names.append(key)
        return names


def to_jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    return str(value)


def _cell(value) -> str:
    value = to_jsonable(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "; ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_json(report: Report) -> str:
    doc = {
        "schema": SCHEMA,
        "kind": report.kind,
        "meta": to_jsonable(report.meta),
        "falsified": report.falsified,
        "rows": to_jsonable(report.rows),
    }
    return json.dumps(doc, indent=2) + "\n"


def render_csv(report: Report) -> str:
    columns = report.column_names()
    if not columns:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in report.rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def render_markdown(report: Report) -> str:
    lines = [f"### {report.kind}", ""]
    for key, value in report.meta.items():
        lines.append(f"- {key}: {_cell(value)}")
    if report.meta:
        lines.append("")
    columns = report.column_names()
    if not report.rows:
        lines.append("_no rows_")
    else:
        lines.append("| " + " | ".join(columns) + " |")
        lines.append("|" + "---|" * len(columns))
        for row in report.rows:
            cells = [_cell(row.get(c)).replace("|", "\\|") for c in columns]
            lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "json", path=None) -> str:
    """Render ``report`` and write it to ``path`` when given; returns the text."""
    renderers = {"json": render_json, "csv": render_csv, "markdown": render_markdown}
    if fmt not in renderers:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    text = renderers[fmt](report)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
