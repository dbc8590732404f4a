"""Deterministic CSV, JSON and SVG emission.

Format contracts (identical inputs must give byte-identical output):
- CSV: UTF-8, LF line endings, header first, comma separated, no trailing
  comma.  Every real is scientific notation with 12 fractional digits,
  pattern d.dddddddddddde+-dd; integers print bare; all values finite.
- JSON: one flat object, insertion-ordered keys, numbers rendered with
  the same 12-digit scientific pattern (valid JSON numbers).
- SVG 1.1: one polyline per series, linear data-to-canvas mapping with 5%
  margins, a frame, and a vertical guide at the data coordinate x = 0
  when it is in range.  Pixel coordinates are fixed to 2 decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import BinaryIO, Sequence

import numpy as np

from .errors import DomainError

__all__ = ["Table", "format_real", "write_csv", "write_json_record", "write_svg"]


def format_real(x: float) -> str:
    """Canonical 12-fractional-digit scientific rendering of a float."""
    if not math.isfinite(x):
        raise DomainError(f"non-finite value {x} cannot be emitted")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.12e}"


@dataclass
class Table:
    """Header plus rows of (float | int | str) cells, all rows same arity."""

    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def validate(self) -> None:
        arity = len(self.columns)
        for row in self.rows:
            if len(row) != arity:
                raise DomainError(
                    f"row arity {len(row)} does not match header arity {arity}"
                )


def _render_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_real(float(value))
    text = str(value)
    if "," in text or "\n" in text:
        raise DomainError(f"cell {text!r} would break the CSV layout")
    return text


def render_csv(table: Table) -> str:
    table.validate()
    lines = [",".join(table.columns)]
    lines.extend(",".join(_render_cell(cell) for cell in row) for row in table.rows)
    return "\n".join(lines) + "\n"


def _write_bytes(data: bytes, destination) -> int:
    """Write to a path or binary stream; returns the byte count."""
    if hasattr(destination, "write"):
        stream: BinaryIO = destination
        stream.write(data)
        return len(data)
    with open(destination, "wb") as fh:
        fh.write(data)
    return len(data)


def write_csv(table: Table, destination) -> int:
    return _write_bytes(render_csv(table).encode("utf-8"), destination)


def render_json_record(record: dict) -> str:
    """Flat JSON object; floats use the canonical scientific pattern."""
    parts = []
    for key, value in record.items():
        if isinstance(value, (float, np.floating)):
            rendered = format_real(float(value))
        elif isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            rendered = str(int(value))
        else:
            text = str(value)
            escaped = text.replace("\\", "\\\\").replace('"', '\\"')
            rendered = f'"{escaped}"'
        parts.append(f'"{key}": {rendered}')
    return "{" + ", ".join(parts) + "}\n"


def write_json_record(record: dict, destination) -> int:
    return _write_bytes(render_json_record(record).encode("utf-8"), destination)


def _px(x: float) -> str:
    return f"{x:.2f}"


def render_svg(
    series: Sequence[tuple[np.ndarray, np.ndarray]],
    width: float = 800.0,
    height: float = 600.0,
) -> str:
    """Polyline plot of (x, y) sample arrays on a fixed canvas."""
    if not series:
        raise DomainError("svg needs at least one series")
    if not (width > 0 and height > 0):
        raise DomainError(f"canvas must be positive, got {width}x{height}")
    for xs, ys in series:
        if len(xs) == 0 or len(ys) == 0 or len(xs) != len(ys):
            raise DomainError("every series needs matching, non-empty samples")

    x_min = min(float(np.min(xs)) for xs, _ in series)
    x_max = max(float(np.max(xs)) for xs, _ in series)
    y_min = min(float(np.min(ys)) for _, ys in series)
    y_max = max(float(np.max(ys)) for _, ys in series)
    # Degenerate extents still need a nonzero scale.
    if x_max == x_min:
        x_min, x_max = x_min - 0.5, x_max + 0.5
    if y_max == y_min:
        y_min, y_max = y_min - 0.5, y_max + 0.5

    mx, my = 0.05 * width, 0.05 * height
    sx = (width - 2.0 * mx) / (x_max - x_min)
    sy = (height - 2.0 * my) / (y_max - y_min)

    def to_px(x: float, y: float) -> tuple[float, float]:
        return mx + (x - x_min) * sx, height - (my + (y - y_min) * sy)

    palette = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_px(width)} {_px(height)}">',
        f'<rect x="{_px(mx)}" y="{_px(my)}" width="{_px(width - 2 * mx)}" '
        f'height="{_px(height - 2 * my)}" fill="none" stroke="#000000" '
        f'stroke-width="1"/>',
    ]
    if x_min <= 0.0 <= x_max:
        gx, _ = to_px(0.0, y_min)
        lines.append(
            f'<line x1="{_px(gx)}" y1="{_px(my)}" x2="{_px(gx)}" '
            f'y2="{_px(height - my)}" stroke="#888888" stroke-width="1" '
            f'stroke-dasharray="4,3"/>'
        )
    for i, (xs, ys) in enumerate(series):
        points = " ".join(
            "{},{}".format(_px(px), _px(py))
            for px, py in (to_px(float(x), float(y)) for x, y in zip(xs, ys))
        )
        color = palette[i % len(palette)]
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(
    series: Sequence[tuple[np.ndarray, np.ndarray]],
    destination,
    width: float = 800.0,
    height: float = 600.0,
) -> int:
    return _write_bytes(render_svg(series, width, height).encode("utf-8"), destination)
