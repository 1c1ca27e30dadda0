"""Self-contained SVG overlay plots for rate-region polygons.

Fixed 800x600 viewport, linear axes with ticks, 30% polygon fill opacity
and a legend block.  No external assets, so the files render anywhere and
parse as plain XML.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .geometry import RatePolygon

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT = 80, 30
MARGIN_TOP, MARGIN_BOTTOM = 40, 70

PALETTE = {
    "hk": "#1f77b4",
    "secure_secret": "#d62728",
    "baseline_inner": "#2ca02c",
    "baseline_best": "#9467bd",
    "outer": "#ff7f0e",
}
FALLBACK_COLORS = ("#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")

__all__ = ["overlay_svg"]


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _color(kind: str, index: int) -> str:
    return PALETTE.get(kind, FALLBACK_COLORS[index % len(FALLBACK_COLORS)])


def _ticks(limit: float, count: int = 5) -> list[float]:
    if limit <= 0:
        return [0.0]
    return [limit * i / count for i in range(count + 1)]


def overlay_svg(named_polygons: list[tuple[str, RatePolygon]], units: str) -> str:
    """Render polygons (already in output units) into one overlay plot."""
    max_x = max((p.max_x for _, p in named_polygons), default=0.0)
    max_y = max((p.max_y for _, p in named_polygons), default=0.0)
    span_x = max(max_x * 1.08, 1e-9)
    span_y = max(max_y * 1.08, 1e-9)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (
            MARGIN_LEFT + x / span_x * plot_w,
            HEIGHT - MARGIN_BOTTOM - y / span_y * plot_h,
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    # axes
    x0, y0 = to_px(0, 0)
    x1, _ = to_px(span_x, 0)
    _, y1 = to_px(0, span_y)
    parts.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" '
        'stroke="black" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" '
        'stroke="black" stroke-width="1.5"/>'
    )
    for tick in _ticks(span_x):
        px, py = to_px(tick, 0)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(py)}" x2="{_fmt(px)}" y2="{_fmt(py + 6)}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{_fmt(py + 22)}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif">{_fmt(tick)}</text>'
        )
    for tick in _ticks(span_y):
        px, py = to_px(0, tick)
        parts.append(
            f'<line x1="{_fmt(px - 6)}" y1="{_fmt(py)}" x2="{_fmt(px)}" y2="{_fmt(py)}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(px - 10)}" y="{_fmt(py + 4)}" font-size="12" '
            f'text-anchor="end" font-family="sans-serif">{_fmt(tick)}</text>'
        )
    parts.append(
        f'<text x="{_fmt(MARGIN_LEFT + plot_w / 2)}" y="{HEIGHT - 18}" font-size="14" '
        f'text-anchor="middle" font-family="sans-serif">R1 ({escape(units)})</text>'
    )
    parts.append(
        f'<text x="22" y="{_fmt(MARGIN_TOP + plot_h / 2)}" font-size="14" '
        f'text-anchor="middle" font-family="sans-serif" '
        f'transform="rotate(-90 22 {_fmt(MARGIN_TOP + plot_h / 2)})">R2 ({escape(units)})</text>'
    )

    # polygons
    for index, (name, poly) in enumerate(named_polygons):
        color = _color(name, index)
        pixel_pts = [to_px(float(x), float(y)) for x, y in poly.vertices]
        if len(pixel_pts) == 1:
            px, py = pixel_pts[0]
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="{color}" '
                'fill-opacity="0.3" stroke-width="2" stroke="none"/>'
            )
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="none" '
                f'stroke="{color}" stroke-width="2"/>'
            )
            continue
        path = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pixel_pts)
        parts.append(
            f'<polygon points="{path}" fill="{color}" fill-opacity="0.3" '
            f'stroke="{color}" stroke-width="2"/>'
        )

    # legend
    legend_x = WIDTH - MARGIN_RIGHT - 200
    legend_y = MARGIN_TOP + 10
    parts.append(
        f'<rect x="{legend_x - 10}" y="{legend_y - 18}" width="210" '
        f'height="{22 * len(named_polygons) + 14}" fill="white" stroke="black" '
        'stroke-width="0.5"/>'
    )
    for index, (name, _) in enumerate(named_polygons):
        color = _color(name, index)
        row_y = legend_y + 22 * index
        parts.append(
            f'<rect x="{legend_x}" y="{row_y - 10}" width="18" height="12" '
            f'fill="{color}" fill-opacity="0.3" stroke="{color}"/>'
        )
        parts.append(
            f'<text x="{legend_x + 26}" y="{row_y}" font-size="13" '
            f'font-family="sans-serif">{escape(name)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts)
