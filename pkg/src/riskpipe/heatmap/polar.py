"""Polar heatmap rendering of an ND slice as an SVG document.

Geometry convention: each context dimension owns an equal angular sector
(360/n degrees), laid out clockwise from 12 o'clock in declaration order.
Within a sector, each level of that dimension's scale is a radial band of
equal thickness. The selected level cell is filled with the grade color.
Output is byte-deterministic for identical inputs.
"""

from __future__ import annotations

import math

from ..errors import EngineError
from .adjust import NDSlice
from .context import RiskObject

_CANVAS_W = 660
_CANVAS_H = 440
_CX = 220.0
_CY = 220.0
_RADIUS = 180.0
_UNSELECTED_FILL = "#eceff1"
_STROKE = "#ffffff"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _point(r: float, angle_deg: float) -> tuple[float, float]:
    # angle measured clockwise from 12 o'clock
    rad = math.radians(angle_deg)
    return (_CX + r * math.sin(rad), _CY - r * math.cos(rad))


def _arc(r: float, a0: float, a1: float, sweep: int) -> str:
    x, y = _point(r, a1 if sweep else a0)
    large = 1 if abs(a1 - a0) > 180.0 else 0
    return f"A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(x)} {_fmt(y)}"


def _cell_path(r0: float, r1: float, a0: float, a1: float) -> str:
    """Annular sector path; full-circle sectors are split into two arcs."""
    if a1 - a0 >= 360.0:
        mid = a0 + 180.0
        outer = (
            f"M {_fmt(_point(r1, a0)[0])} {_fmt(_point(r1, a0)[1])} "
            f"{_arc(r1, a0, mid, 1)} {_arc(r1, mid, a0 + 360.0, 1)}"
        )
        if r0 <= 0.0:
            return outer + " Z"
        inner_start = _point(r0, a0)
        return (
            outer
            + f" M {_fmt(inner_start[0])} {_fmt(inner_start[1])} "
            + f"{_arc(r0, a0, mid, 1)} {_arc(r0, mid, a0 + 360.0, 1)} Z"
        )
    p1 = _point(r1, a0)
    p3 = _point(r0, a1)
    parts = [f"M {_fmt(p1[0])} {_fmt(p1[1])}", _arc(r1, a0, a1, 1)]
    parts.append(f"L {_fmt(p3[0])} {_fmt(p3[1])}")
    if r0 > 0.0:
        parts.append(_arc(r0, a1, a0, 0))
    else:
        parts.append(f"L {_fmt(_CX)} {_fmt(_CY)}")
    parts.append("Z")
    return " ".join(parts)


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def render_polar(nd_slice: NDSlice, risk: RiskObject) -> bytes:
    """Render the slice as an SVG polar heatmap with a legend."""
    dims = risk.context_dims
    if not dims:
        raise EngineError(
            "POLAR_NO_DIMS", "polar rendering requires >=1 context dimension"
        )
    selected = nd_slice.state.as_dict()
    sector = 360.0 / len(dims)
    grade = nd_slice.grade

    lines: list[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_CANVAS_W}" '
        f'height="{_CANVAS_H}" viewBox="0 0 {_CANVAS_W} {_CANVAS_H}">'
    )
    lines.append(f"<title>{_esc(risk.title)}</title>")
    lines.append(f'<rect width="{_CANVAS_W}" height="{_CANVAS_H}" fill="#ffffff"/>')

    for di, dim in enumerate(dims):
        a0 = di * sector
        a1 = (di + 1) * sector
        band = _RADIUS / len(dim.scale.levels)
        sel_level = selected.get(dim.name)
        for level in dim.scale.levels:
            r0 = level.index * band
            r1 = (level.index + 1) * band
            is_sel = level.name == sel_level
            fill = grade.color if is_sel else _UNSELECTED_FILL
            lines.append(
                f'<path class="cell" data-dim="{_esc(dim.name)}" '
                f'data-level="{_esc(level.name)}" '
                f'data-selected="{"true" if is_sel else "false"}" '
                f'd="{_cell_path(r0, r1, a0, a1)}" fill="{fill}" '
                f'stroke="{_STROKE}" stroke-width="1"/>'
            )

    # sector boundary spokes (skip for a single full-circle sector)
    if len(dims) > 1:
        for di in range(len(dims)):
            x, y = _point(_RADIUS, di * sector)
            lines.append(
                f'<line x1="{_fmt(_CX)}" y1="{_fmt(_CY)}" x2="{_fmt(x)}" '
                f'y2="{_fmt(y)}" stroke="#90a4ae" stroke-width="1"/>'
            )

    legend_x = 440
    y = 40
    lines.append(
        f'<text x="{legend_x}" y="{y}" font-family="sans-serif" font-size="14" '
        f'font-weight="bold">{_esc(risk.id)}</text>'
    )
    y += 24
    for dim in dims:
        lines.append(
            f'<text class="legend-dim" x="{legend_x}" y="{y}" '
            f'font-family="sans-serif" font-size="12">'
            f"{_esc(dim.name)}: {_esc(selected.get(dim.name, ''))}</text>"
        )
        y += 18
    y += 8
    lines.append(
        f'<rect class="legend-grade-swatch" x="{legend_x}" y="{y - 11}" '
        f'width="12" height="12" fill="{grade.color}"/>'
    )
    lines.append(
        f'<text class="legend-grade" x="{legend_x + 18}" y="{y}" '
        f'font-family="sans-serif" font-size="12">grade: {_esc(grade.name)}</text>'
    )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
