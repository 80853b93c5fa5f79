"""Dependency-free SVG line plots with byte-deterministic output.

The same inputs always produce the same bytes: coordinates are formatted with
a fixed precision, colors come from a fixed palette, and nothing depends on
locale, time, or dict ordering.  That makes rendered plots safe to diff and
to check into golden-file tests.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvariantViolation

_WIDTH = 800
_HEIGHT = 500
_MARGIN_LEFT = 60
_MARGIN_RIGHT = 20
_MARGIN_TOP = 20
_MARGIN_BOTTOM = 45
_N_TICKS = 5
_RANGE_PAD = 0.05  # widen the value range 5% each side

_PALETTE = ("#1f6f8b", "#d1495b", "#edae49", "#30638e", "#66a182", "#8d96a3")


def write_svg(
    path: str | Path,
    times: Sequence[float],
    series: Sequence[tuple[str, Sequence[float]]],
    *,
    title: str = "",
    x_label: str = "time",
    y_label: str = "value",
) -> None:
    """Render one or more labelled lines over a shared time axis."""
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise InvariantViolation("times must be a 1-d sequence with at least 2 points")
    curves: list[tuple[str, np.ndarray]] = []
    for label, values in series:
        v = np.asarray(values, dtype=float)
        if v.shape != t.shape:
            raise InvariantViolation(
                f"series {label!r} has {v.size} points, expected {t.size}"
            )
        if not np.all(np.isfinite(v)):
            raise InvariantViolation(f"series {label!r} contains non-finite values")
        curves.append((label, v))
    if not curves:
        raise InvariantViolation("need at least one series to plot")
    if not np.all(np.isfinite(t)):
        raise InvariantViolation("times contains non-finite values")

    x_min, x_max = _padded_range(float(t.min()), float(t.max()), pad=0.0)
    lo = min(float(v.min()) for _, v in curves)
    hi = max(float(v.max()) for _, v in curves)
    y_min, y_max = _padded_range(lo, hi, pad=_RANGE_PAD)

    plot_left = _MARGIN_LEFT
    plot_right = _WIDTH - _MARGIN_RIGHT
    plot_top = _MARGIN_TOP
    plot_bottom = _HEIGHT - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return plot_left + (x - x_min) / (x_max - x_min) * (plot_right - plot_left)

    def py(y: float) -> float:
        return plot_bottom - (y - y_min) / (y_max - y_min) * (plot_bottom - plot_top)

    parts: list[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    parts.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>')

    # Gridlines and tick labels.
    for i in range(_N_TICKS):
        frac = i / (_N_TICKS - 1)
        xv = x_min + frac * (x_max - x_min)
        yv = y_min + frac * (y_max - y_min)
        xp = px(xv)
        yp = py(yv)
        parts.append(
            f'<line x1="{xp:.2f}" y1="{plot_top}" x2="{xp:.2f}" y2="{plot_bottom}" '
            'stroke="#e0e0e0" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{plot_left}" y1="{yp:.2f}" x2="{plot_right}" y2="{yp:.2f}" '
            'stroke="#e0e0e0" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{xp:.2f}" y="{plot_bottom + 16}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle" fill="#444444">{_tick(xv)}</text>'
        )
        parts.append(
            f'<text x="{plot_left - 6}" y="{yp + 4:.2f}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end" fill="#444444">{_tick(yv)}</text>'
        )

    parts.append(
        f'<rect x="{plot_left}" y="{plot_top}" width="{plot_right - plot_left}" '
        f'height="{plot_bottom - plot_top}" fill="none" stroke="#444444" stroke-width="1"/>'
    )

    for idx, (label, v) in enumerate(curves):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(t, v))
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )

    # Legend in the top-right corner of the plot area.
    labelled = [(i, label) for i, (label, _) in enumerate(curves) if label]
    for row, (idx, label) in enumerate(labelled):
        color = _PALETTE[idx % len(_PALETTE)]
        ly = plot_top + 14 + 16 * row
        lx = plot_right - 130
        parts.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 22}" y2="{ly}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11" fill="#222222">{_escape(label)}</text>'
        )

    if title:
        parts.append(
            f'<text x="{(plot_left + plot_right) / 2:.2f}" y="15" font-family="sans-serif" '
            f'font-size="13" text-anchor="middle" fill="#222222">{_escape(title)}</text>'
        )
    parts.append(
        f'<text x="{(plot_left + plot_right) / 2:.2f}" y="{_HEIGHT - 8}" '
        'font-family="sans-serif" font-size="12" text-anchor="middle" '
        f'fill="#222222">{_escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="14" y="{(plot_top + plot_bottom) / 2:.2f}" font-family="sans-serif" '
        'font-size="12" text-anchor="middle" fill="#222222" '
        f'transform="rotate(-90 14 {(plot_top + plot_bottom) / 2:.2f})">{_escape(y_label)}</text>'
    )
    parts.append("</svg>")

    data = "\n".join(parts).encode("utf-8") + b"\n"
    with open(path, "wb") as fh:
        fh.write(data)


def _padded_range(lo: float, hi: float, pad: float) -> tuple[float, float]:
    if math.isclose(lo, hi, rel_tol=0.0, abs_tol=0.0) or hi - lo == 0.0:
        # a flat line still needs a drawable band
        return lo - 0.5, hi + 0.5
    span = hi - lo
    return lo - pad * span, hi + pad * span


def _tick(value: float) -> str:
    text = "%.4g" % value
    # normalize negative zero so ticks are stable across platforms
    return "0" if text == "-0" else text


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
