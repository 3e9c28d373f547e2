"""Report documents: named sections of rows, emitted as an aligned text table
or as JSON lines with exact rational fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .exact import GaussianRational


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def encode_value(value: Any) -> Any:
    """JSON-safe form; rationals become ``"num/den"`` strings, never floats."""
    if isinstance(value, GaussianRational):
        return {"re": rational_str(value.re), "im": rational_str(value.im)}
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        raise TypeError("floats are not emitted in reports")
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return str(value)


def display_value(value: Any) -> str:
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(display_value(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)


@dataclass
class Section:
    name: str
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)

    def add(self, **row: Any) -> None:
        missing = set(self.columns) - set(row)
        if missing:
            raise KeyError(f"row for {self.name} lacks {sorted(missing)}")
        self.rows.append(row)


@dataclass
class ReportDocument:
    config: dict[str, Any]
    sections: list[Section] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    version: str = __version__

    def section(self, name: str, columns: list[str]) -> Section:
        sec = Section(name, columns)
        self.sections.append(sec)
        return sec

    def fail(self, message: str) -> None:
        self.failures.append(message)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_records(self) -> str:
        lines = [
            json.dumps(
                {"record": "header", "version": self.version, "config": encode_value_map(self.config)},
                sort_keys=True,
            )
        ]
        for sec in self.sections:
            for row in sec.rows:
                payload = {"record": "row", "section": sec.name}
                payload.update(encode_value_map(row))
                lines.append(json.dumps(payload, sort_keys=True))
        lines.append(
            json.dumps({"record": "summary", "passed": self.passed, "failures": self.failures}, sort_keys=True)
        )
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        out = [f"asdforms {self.version}"]
        out.append("config: " + ", ".join(f"{k}={display_value(v)}" for k, v in sorted(self.config.items())))
        for sec in self.sections:
            out.append("")
            out.append(f"== {sec.name} ==")
            cells = [[display_value(r[c]) for c in sec.columns] for r in sec.rows]
            widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(sec.columns)]
            out.append("  ".join(c.ljust(w) for c, w in zip(sec.columns, widths)).rstrip())
            for row in cells:
                out.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        out.append("")
        if self.passed:
            out.append("result: all checks pass")
        else:
            out.append(f"result: {len(self.failures)} failure(s)")
            out.extend(f"  - {m}" for m in self.failures)
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_records() if fmt == "records" else self.to_table()


def encode_value_map(row: dict[str, Any]) -> dict[str, Any]:
    return {k: encode_value(v) for k, v in row.items()}
