"""Self-contained SVG line charts; no plotting dependencies.

Good enough for eyeballing learning curves next to their canonical CSVs.
"""

from __future__ import annotations

_PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
]

_WIDTH, _HEIGHT = 720, 440
_MARGIN_LEFT, _MARGIN_RIGHT, _MARGIN_TOP, _MARGIN_BOTTOM = 60, 150, 40, 50


def line_chart(
    series: dict[str, list[tuple[float, float]]],
    title: str,
    x_label: str = "labels",
    y_label: str = "",
    y_range: tuple[float, float] = (0.0, 1.0),
) -> str:
    """Render named (x, y) series as one SVG document string."""
    xs = [x for points in series.values() for x, _ in points]
    x_min, x_max = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if x_min == x_max:
        x_max = x_min + 1.0
    y_min, y_max = y_range

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def sx(x: float) -> float:
        return _MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_TOP + (1 - (y - y_min) / (y_max - y_min)) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="15">{title}</text>',
    ]

    # gridlines + y ticks
    for i in range(6):
        y = y_min + (y_max - y_min) * i / 5
        py = sy(y)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{py:.1f}" x2="{_MARGIN_LEFT + plot_w}" '
            f'y2="{py:.1f}" stroke="#ddd"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{py + 4:.1f}" text-anchor="end">{y:.2f}</text>'
        )
    # x ticks
    for i in range(6):
        x = x_min + (x_max - x_min) * i / 5
        px = sx(x)
        parts.append(
            f'<line x1="{px:.1f}" y1="{_MARGIN_TOP + plot_h}" x2="{px:.1f}" '
            f'y2="{_MARGIN_TOP + plot_h + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{_MARGIN_TOP + plot_h + 20:.1f}" '
            f'text-anchor="middle">{x:.0f}</text>'
        )
    parts.append(
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333"/>'
    )
    parts.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" y="{_HEIGHT - 10}" '
        f'text-anchor="middle">{x_label}</text>'
    )
    if y_label:
        parts.append(
            f'<text x="18" y="{_MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 18 {_MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>'
        )

    for i, (name, points) in enumerate(series.items()):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in points)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"/>'
        )
        legend_y = _MARGIN_TOP + 14 + i * 18
        legend_x = _MARGIN_LEFT + plot_w + 12
        parts.append(
            f'<line x1="{legend_x}" y1="{legend_y - 4}" x2="{legend_x + 18}" '
            f'y2="{legend_y - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{legend_x + 24}" y="{legend_y}">{name}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
