from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "na")


@dataclass(frozen=True)
class OutputEnvelope:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    result: Any = None
    status: str = "na"

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"Unsupported status: {self.status}")


def envelope_to_dict(envelope: OutputEnvelope) -> dict[str, Any]:
    return {
        "command": envelope.command,
        "parameters": dict(envelope.parameters),
        "result": envelope.result,
        "status": envelope.status,
    }


def render_json(envelope: OutputEnvelope, indent: int = 2) -> str:
    return json.dumps(envelope_to_dict(envelope), indent=indent, ensure_ascii=False)


def render_csv(envelope: OutputEnvelope) -> str:
    """Result rows only; nested mappings become dotted columns, lists join with ';'."""
    result = envelope.result
    items = result if isinstance(result, list) else [result]
    rows = [flatten_row(item) for item in items]
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([row.get(key, "") for key in header])
    return buffer.getvalue().rstrip("\n")


def render(envelope: OutputEnvelope, output_format: str, indent: int = 2) -> str:
    if output_format == "csv":
        return render_csv(envelope)
    return render_json(envelope, indent=indent)


def flatten_row(item: Any, prefix: str = "") -> dict[str, str]:
    if not isinstance(item, dict):
        return {prefix or "value": _cell(item)}
    row: dict[str, str] = {}
    for key, value in item.items():
        name = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, dict):
            row.update(flatten_row(value, name))
        else:
            row[name] = _cell(value)
    return row


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ";".join(_list_item(item) for item in value)
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _list_item(item: Any) -> str:
    if isinstance(item, (list, tuple)):
        return ":".join(_list_item(part) for part in item)
    if isinstance(item, dict):
        return json.dumps(item, separators=(",", ":"))
    return _cell(item)
