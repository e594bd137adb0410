"""Deterministic rendering of report tables to md, csv, and json.

Same input, same bytes: fixed key order, two-decimal numeric cells, no
timestamps. The json format carries the full report payload including
the config hash and seed; md and csv are views over the same tables.
"""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path

FORMATS = ("md", "csv", "json")


def _cell_text(cell) -> str:
    if cell is None:
        return "-"
    if isinstance(cell, dict):
        if "rendered" in cell:
            value = cell["rendered"]
        elif cell.get("value") is None:
            value = "-"
        else:
            value = f"{cell['value']:.2f}"
        n = cell.get("n")
        return f"{value} ({n})" if n is not None else str(value)
    if isinstance(cell, float):
        return f"{cell:.2f}"
    return str(cell)


def render_table_markdown(table: dict) -> str:
    header = [table["key"], *table["columns"]]
    lines = [
        f"### {table['title']}",
        "",
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    for row in table["rows"]:
        cells = [_cell_text(row["cells"].get(col)) for col in table["columns"]]
        lines.append("| " + " | ".join([str(row["label"]), *cells]) + " |")
    note = table.get("metadata", {}).get("f1_note")
    if note:
        lines.append("")
        lines.append(f"_{note}._")
    return "\n".join(lines) + "\n"


def render_markdown(report: dict) -> str:
    parts = ["# Evaluation report", ""]
    parts.append(f"- config hash: `{report['config_hash']}`")
    parts.append(f"- seed: {report['seed']}")
    parts.append("")
    for name in sorted(report["tables"]):
        parts.append(render_table_markdown(report["tables"][name]))
    return "\n".join(parts)


def _slug(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", name.lower()).strip("_")


def render_table_csv(table: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([table["key"], *table["columns"]])
        for row in table["rows"]:
            writer.writerow(
                [row["label"]]
                + [_cell_text(row["cells"].get(col)) for col in table["columns"]]
            )


def render_report(report: dict, fmt: str, out_dir: str | Path) -> list[Path]:
    """Write the report in one format; returns the files written."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown report format: {fmt!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if fmt == "json":
        path = out_dir / "report.json"
        payload = json.dumps(report, ensure_ascii=False, sort_keys=True, indent=1)
        path.write_text(payload + "\n", encoding="utf-8")
        written.append(path)
    elif fmt == "md":
        path = out_dir / "report.md"
        path.write_text(render_markdown(report), encoding="utf-8")
        written.append(path)
    else:
        for name in sorted(report["tables"]):
            path = out_dir / "tables" / f"{_slug(name)}.csv"
            render_table_csv(report["tables"][name], path)
            written.append(path)
    return written
