"""Plot-ready tables: CSV with '#' metadata lines, or JSON. Plus SI conversion helpers."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence

from slipmap.errors import DomainError

OUTDIR_ENV = "SLIPMAP_OUTDIR"


def default_outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "slipmap-out"))


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) or hasattr(v, "dtype"):
        return repr(float(v))
    return str(v)


def _parse(s: str):
    if s == "true":
        return True
    if s == "false":
        return False
    try:
        return float(s)
    except ValueError:
        return s


def _plain(v):
    """numpy scalars -> python scalars for json."""
    if isinstance(v, bool):
        return v
    if hasattr(v, "item"):
        return v.item()
    return v


@dataclass
class Table:
    name: str
    columns: List[str]
    rows: List[Sequence[Any]]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def column(self, name) -> list:
        k = self.columns.index(name)
        return [r[k] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.metadata.items():
            buf.write(f"# {k}: {json.dumps(_plain(v), sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_fmt(v) for v in r])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "metadata": {k: _plain(v) for k, v in self.metadata.items()},
            "columns": self.columns,
            "rows": [[_plain(v) for v in r] for r in self.rows],
        }
        return json.dumps(doc, indent=1, allow_nan=True)

    def render(self, fmt: str = "csv") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")

    def write(self, path, fmt: str = "csv") -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(fmt), encoding="utf-8")
        return path

    @classmethod
    def from_csv(cls, text: str, name: str = "") -> "Table":
        meta, body = {}, []
        for line in text.splitlines():
            if line.startswith("# "):
                k, _, v = line[2:].partition(": ")
                meta[k] = json.loads(v)
            elif line:
                body.append(line)
        reader = csv.reader(body)
        columns = next(reader)
        rows = [[_parse(x) for x in r] for r in reader]
        return cls(name=name, columns=columns, rows=rows, metadata=meta)

    @classmethod
    def from_json(cls, text: str) -> "Table":
        doc = json.loads(text)
        return cls(name=doc["name"], columns=doc["columns"], rows=doc["rows"], metadata=doc["metadata"])


def dimensionalize(value, kind: str = "energy", mass=75.0, gravity=9.81, leg_length=1.0) -> float:
    """Energy -> m g l0 E_s [J]; velocity -> X' sqrt(g l0) [m/s]."""
    if gravity <= 0 or leg_length <= 0 or (kind == "energy" and mass <= 0):
        raise DomainError("physical constants must be positive")
    if kind == "energy":
        return mass * gravity * leg_length * value
    if kind == "velocity":
        return value * math.sqrt(gravity * leg_length)
    raise ValueError(f"unknown kind {kind!r}; expected 'energy' or 'velocity'")
