"""Report emission: fixed-schema CSV, JSON mirrors, and minimal SVG plots.

CSV output is ASCII, comma-separated, LF-terminated, with a mandatory header
row.  Exact rationals are rendered as num/den; floats always carry 12
significant digits so repeated runs stay byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

AK_HEADER = ("k", "smallest_prime", "period", "count")
L0_HEADER = ("i", "count", "smallest")
PERIOD_HEADER = ("m", "p", "T", "ratio")
FREQ_HEADER = ("position", "digit", "empirical", "gauss_kuzmin")


def format_float(x: float) -> str:
    return format(x, ".12g")


def format_rational(x: Fraction) -> str:
    """Exact num/den plus a 12-significant-digit decimal."""
    return f"{x.numerator}/{x.denominator} = {format_float(float(x))}"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(_cell(v) for v in row) + "\n")


def _json_value(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def rows_to_objects(header: Sequence[str], rows: Iterable[Sequence]) -> list[dict]:
    return [dict(zip(header, (_json_value(v) for v in row))) for row in rows]


def write_json(stream: TextIO, payload) -> None:
    json.dump(payload, stream, indent=2, sort_keys=False)
    stream.write("\n")


# ---------------------------------------------------------------------------
# SVG: self-contained scatter and bar plots, no renderer dependency

_SVG_W, _SVG_H = 960, 540
_MARGIN = 50


def _scale(values: Sequence[float], lo: float, hi: float, out_lo: float, out_hi: float):
    span = hi - lo if hi > lo else 1.0
    return [out_lo + (v - lo) / span * (out_hi - out_lo) for v in values]


def _svg_frame(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<text x="{_SVG_W // 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{_MARGIN}" y1="{_SVG_H - _MARGIN}" x2="{_SVG_W - _MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" y2="{_SVG_H - _MARGIN}" '
        f'stroke="black"/>',
    ]


def _svg_axis_labels(x_lo, x_hi, y_lo, y_hi) -> list[str]:
    return [
        f'<text x="{_MARGIN}" y="{_SVG_H - _MARGIN + 16}" font-size="11">{format_float(float(x_lo))}</text>',
        f'<text x="{_SVG_W - _MARGIN}" y="{_SVG_H - _MARGIN + 16}" text-anchor="end" '
        f'font-size="11">{format_float(float(x_hi))}</text>',
        f'<text x="{_MARGIN - 4}" y="{_SVG_H - _MARGIN}" text-anchor="end" '
        f'font-size="11">{format_float(float(y_lo))}</text>',
        f'<text x="{_MARGIN - 4}" y="{_MARGIN + 4}" text-anchor="end" '
        f'font-size="11">{format_float(float(y_hi))}</text>',
    ]


def write_svg_scatter(
    stream: TextIO,
    xs: Sequence[float],
    ys: Sequence[float],
    title: str = "",
) -> None:
    """Scatter plot with auto-scaled axes; one 1.2px dot per sample."""
    if not len(xs):
        stream.write("\n".join(_svg_frame(title)) + "</svg>\n")
        return
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    px = _scale(xs, x_lo, x_hi, _MARGIN, _SVG_W - _MARGIN)
    py = _scale(ys, y_lo, y_hi, _SVG_H - _MARGIN, _MARGIN)
    parts = _svg_frame(title) + _svg_axis_labels(x_lo, x_hi, y_lo, y_hi)
    for x, y in zip(px, py):
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1.2" fill="steelblue"/>')
    parts.append("</svg>")
    stream.write("\n".join(parts) + "\n")


def write_svg_bars(
    stream: TextIO,
    xs: Sequence[int],
    heights: Sequence[float],
    title: str = "",
) -> None:
    """Bar plot keyed by integer x positions."""
    if not len(xs):
        stream.write("\n".join(_svg_frame(title)) + "</svg>\n")
        return
    x_lo, x_hi = min(xs), max(xs)
    y_hi = max(heights) if max(heights) > 0 else 1.0
    slots = x_hi - x_lo + 1
    bar_w = max((_SVG_W - 2 * _MARGIN) / max(slots, 1) - 1.0, 0.5)
    parts = _svg_frame(title) + _svg_axis_labels(x_lo, x_hi, 0, y_hi)
    for x, h in zip(xs, heights):
        px = _MARGIN + (x - x_lo) / max(slots, 1) * (_SVG_W - 2 * _MARGIN)
        ph = (h / y_hi) * (_SVG_H - 2 * _MARGIN)
        parts.append(
            f'<rect x="{px:.2f}" y="{_SVG_H - _MARGIN - ph:.2f}" '
            f'width="{bar_w:.2f}" height="{ph:.2f}" fill="steelblue"/>'
        )
    parts.append("</svg>")
    stream.write("\n".join(parts) + "\n")
