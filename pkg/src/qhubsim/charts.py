"""Two-panel SVG line chart of sweep results, generated without plot libraries.

Panel (a): teleportation success rate versus network size.
Panel (b): average entanglement attempts per teleportation versus network size.

One polyline per (policy, source) with a log-2 horizontal axis. Simulated
series are solid with round markers; analytic (closed-form) series are
dashed. The output is a single self-contained SVG document.
"""

from __future__ import annotations

import math
from typing import Sequence

from .model import PolicyKind
from .stats import AnalyticPoint, PointSummary

WIDTH = 880
PANEL_HEIGHT = 330
MARGIN_LEFT = 80
MARGIN_RIGHT = 40
MARGIN_TOP = 56
PANEL_GAP = 72
MARGIN_BOTTOM = 64

POLICY_COLORS = {
    PolicyKind.NAIVE_SEQUENTIAL: "#d62728",
    PolicyKind.ORCHESTRATED_PARALLEL: "#1f77b4",
}

X_AXIS_LABEL = "Number of QPUs, N"
PANEL_A_TITLE = "(a) Success rate vs network size"
PANEL_B_TITLE = "(b) Attempt cost vs network size"
PANEL_A_YLABEL = "Teleportation success rate"
PANEL_B_YLABEL = "Avg entanglement attempts per teleportation"


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _series(
    summaries: Sequence[PointSummary],
    analytic: Sequence[AnalyticPoint],
    attempts_per_served: bool,
) -> list[tuple[str, PolicyKind, str, list[tuple[int, float, float]]]]:
    """Group rows into (source, policy, label, [(n, success, attempts)]) series."""
    out = []
    for source, rows in (("sim", summaries), ("analytic", analytic)):
        by_policy: dict[PolicyKind, list] = {}
        for row in rows:
            by_policy.setdefault(row.policy, []).append(row)
        for policy in sorted(by_policy, key=lambda p: p.label):
            pts = []
            for row in sorted(by_policy[policy], key=lambda r: r.n):
                attempts = row.attempts_per_served() if attempts_per_served else row.mean_attempts
                pts.append((row.n, row.success_rate, attempts))
            out.append((source, policy, f"{policy.label} ({source})", pts))
    return out


class _Panel:
    """Maps data coordinates to pixel coordinates for one panel."""

    def __init__(self, top: int, x_values: Sequence[int], y_max: float):
        self.top = top
        self.bottom = top + PANEL_HEIGHT
        self.left = MARGIN_LEFT
        self.right = WIDTH - MARGIN_RIGHT
        xs = sorted(set(x_values))
        self.lo = math.log2(xs[0])
        self.hi = math.log2(xs[-1])
        self.span = self.hi - self.lo
        self.y_max = y_max

    def x(self, n: int) -> float:
        if self.span == 0.0:  # single grid point: center it
            return (self.left + self.right) / 2.0
        frac = (math.log2(n) - self.lo) / self.span
        return self.left + frac * (self.right - self.left)

    def y(self, v: float) -> float:
        frac = v / self.y_max if self.y_max > 0 else 0.0
        return self.bottom - frac * PANEL_HEIGHT


def _axes(svg: list[str], panel: _Panel, title: str, y_label: str,
          x_ticks: Sequence[int], y_ticks: Sequence[float], y_fmt: str) -> None:
    svg.append(
        f'<rect x="{panel.left}" y="{panel.top}" width="{panel.right - panel.left}" '
        f'height="{PANEL_HEIGHT}" fill="none" stroke="#333" stroke-width="1"/>'
    )
    svg.append(
        f'<text x="{(panel.left + panel.right) / 2:.1f}" y="{panel.top - 14}" '
        f'text-anchor="middle" font-size="15" font-weight="bold">{_esc(title)}</text>'
    )
    for n in x_ticks:
        px = panel.x(n)
        svg.append(
            f'<line x1="{_fmt(px)}" y1="{panel.bottom}" x2="{_fmt(px)}" '
            f'y2="{panel.bottom + 5}" stroke="#333"/>'
        )
        svg.append(
            f'<text x="{_fmt(px)}" y="{panel.bottom + 20}" text-anchor="middle" '
            f'font-size="12">{n}</text>'
        )
    for v in y_ticks:
        py = panel.y(v)
        svg.append(
            f'<line x1="{panel.left - 5}" y1="{_fmt(py)}" x2="{panel.left}" '
            f'y2="{_fmt(py)}" stroke="#333"/>'
        )
        svg.append(
            f'<line x1="{panel.left}" y1="{_fmt(py)}" x2="{panel.right}" '
            f'y2="{_fmt(py)}" stroke="#ddd" stroke-width="0.5"/>'
        )
        svg.append(
            f'<text x="{panel.left - 9}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-size="12">{v:{y_fmt}}</text>'
        )
    mid_y = (panel.top + panel.bottom) / 2
    svg.append(
        f'<text x="22" y="{mid_y:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 22 {mid_y:.1f})">{_esc(y_label)}</text>'
    )


def _polyline(svg: list[str], panel: _Panel, pts, value_index: int,
              color: str, dashed: bool, marker_r: float) -> None:
    coords = [(panel.x(n), panel.y(vals[value_index - 1])) for (n, *vals) in pts]
    if len(coords) > 1:
        path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in coords)
        dash = ' stroke-dasharray="7,4"' if dashed else ""
        svg.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" '
            f'stroke-width="2"{dash}/>'
        )
    for x, y in coords:
        svg.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{marker_r}" fill="{color}"/>')


def render_chart(
    summaries: Sequence[PointSummary],
    analytic: Sequence[AnalyticPoint] = (),
    attempts_per_served: bool = False,
) -> str:
    """Build the SVG document text for the two-panel chart."""
    if not summaries and not analytic:
        raise ValueError("chart requires at least one summary or analytic row")
    series = _series(summaries, analytic, attempts_per_served)
    x_values = sorted({n for (_, _, _, pts) in series for (n, _, _) in pts})
    attempts_max = max(a for (_, _, _, pts) in series for (_, _, a) in pts)
    attempts_max = attempts_max * 1.15 if attempts_max > 0 else 1.0

    height = MARGIN_TOP + PANEL_HEIGHT + PANEL_GAP + PANEL_HEIGHT + MARGIN_BOTTOM
    svg = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="Helvetica, Arial, sans-serif">',
        f'<rect width="{WIDTH}" height="{height}" fill="white"/>',
    ]

    panel_a = _Panel(MARGIN_TOP, x_values, 1.0)
    panel_b = _Panel(MARGIN_TOP + PANEL_HEIGHT + PANEL_GAP, x_values, attempts_max)
    _axes(svg, panel_a, PANEL_A_TITLE, PANEL_A_YLABEL, x_values,
          [0.0, 0.25, 0.5, 0.75, 1.0], ".2f")
    b_ticks = [attempts_max * f / 4.0 for f in range(5)]
    _axes(svg, panel_b, PANEL_B_TITLE, PANEL_B_YLABEL, x_values, b_ticks, ".1f")
    svg.append(
        f'<text x="{(MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2:.1f}" y="{height - 18}" '
        f'text-anchor="middle" font-size="13">{_esc(X_AXIS_LABEL)}</text>'
    )

    for source, policy, _, pts in series:
        color = POLICY_COLORS.get(policy, "#555")
        dashed = source == "analytic"
        marker = 2.5 if dashed else 3.5
        _polyline(svg, panel_a, pts, 1, color, dashed, marker)
        _polyline(svg, panel_b, pts, 2, color, dashed, marker)

    legend_x = WIDTH - MARGIN_RIGHT - 200
    legend_y = MARGIN_TOP + 12
    svg.append(
        f'<rect x="{legend_x - 10}" y="{legend_y - 14}" width="200" '
        f'height="{18 * len(series) + 10}" fill="white" stroke="#999" opacity="0.9"/>'
    )
    for i, (source, policy, label, _) in enumerate(series):
        y = legend_y + 18 * i
        color = POLICY_COLORS.get(policy, "#555")
        dash = ' stroke-dasharray="7,4"' if source == "analytic" else ""
        svg.append(
            f'<line x1="{legend_x}" y1="{y}" x2="{legend_x + 30}" y2="{y}" '
            f'stroke="{color}" stroke-width="2"{dash}/>'
        )
        svg.append(
            f'<text x="{legend_x + 38}" y="{y + 4}" font-size="12">{_esc(label)}</text>'
        )

    svg.append("</svg>")
    return "\n".join(svg) + "\n"


def emit_chart(
    summaries: Sequence[PointSummary],
    analytic: Sequence[AnalyticPoint],
    path: str,
    attempts_per_served: bool = False,
) -> None:
    """Write the chart SVG to ``path``. Read-only over its inputs."""
    text = render_chart(summaries, analytic, attempts_per_served)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
