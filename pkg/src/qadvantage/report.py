"""Number formatting and report rendering.

Two representations of every value: a full-precision one (shortest
round-tripping scientific notation in CSV, plain floats in JSON) and a
3-significant-figure display string for people.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Any, Iterable, List, Sequence

_SI = {0: "", 3: "k", 6: "M", 9: "G", 12: "T", 15: "P", 18: "E", 21: "Z"}


def round_sig(x: float, digits: int = 3) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits - 1}e}")


def _plain(x: float) -> str:
    """Fixed-point form of an already rounded value, thousands grouped."""
    if abs(x) >= 1000:
        return f"{x:,.0f}"
    return format(Decimal(f"{x:.3g}"), "f")


def display(value: float, unit: str = "", *, si: bool = False) -> str:
    """3-significant-figure display string, optionally with an SI prefix on ``unit``."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        text = "inf" if value > 0 else "-inf"
        return f"{text} {unit}".rstrip()
    r = round_sig(value)
    prefix = ""
    if si and abs(r) >= 1000:
        exp = min(21, 3 * math.floor(math.log10(abs(r)) / 3))
        prefix = _SI[exp]
        r = float(Decimal(repr(r)).scaleb(-exp))
    return f"{_plain(r)} {prefix}{unit}".rstrip()


def sci(x: float) -> str:
    """Shortest scientific-notation string that parses back to ``x`` (at most 17 digits)."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    for p in range(17):
        s = f"{x:.{p}e}"
        if float(s) == x:
            return s
    return f"{x:.16e}"


def to_jsonable(obj: Any) -> Any:
    """Replace non-finite floats (not representable in JSON) with strings."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, allow_nan=False) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([sci(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


@dataclass(frozen=True)
class ReportRow:
    label: str
    quantity: str
    unit: str
    value: float
    display: str
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "quantity": self.quantity,
            "unit": self.unit,
            "value": self.value,
            "display": self.display,
            "note": self.note,
        }


def rows_csv(rows: Sequence[ReportRow]) -> str:
    return csv_text(
        ["label", "quantity", "unit", "value", "display", "note"],
        ([r.label, r.quantity, r.unit, float(r.value), r.display, r.note] for r in rows),
    )


def grid_text(title: str, columns: Sequence[str], lines: Sequence[Sequence[str]]) -> str:
    """Right-aligned text table; first column left-aligned."""
    table: List[Sequence[str]] = [["", *columns], *lines]
    widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
    out = [title]
    for j, r in enumerate(table):
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        out.append("  ".join(cells).rstrip())
        if j == 0:
            out.append("-" * len(out[-1]))
    return "\n".join(out) + "\n"
