"""Per-team accuracy-by-order chart data, as CSV and as a plain SVG barplot."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from html import escape

from .errors import InputError

CHART_COLUMNS = ("team", "k", "accuracy")

WIDTH = 480
ROW_H = 22
TOP = 40
LEFT = 48
RIGHT = 56
BOTTOM = 36


@dataclass(frozen=True)
class ChartData:
    team: str
    rows: tuple[tuple[int, float], ...]

    def __post_init__(self):
        rows = tuple((int(k), float(a)) for k, a in self.rows)
        ks = [k for k, _ in rows]
        if ks != sorted(set(ks)):
            raise InputError(f"chart orders must be distinct and ascending: {ks}")
        if any(not 0.0 <= a <= 1.0 for _, a in rows):
            raise InputError("chart accuracies must lie in [0, 1]")
        object.__setattr__(self, "rows", rows)


def chart_from_report(report) -> ChartData:
    per_k = report.per_k
    return ChartData(report.team, tuple(sorted(per_k.items())))


def write_chart_csv(chart: ChartData, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CHART_COLUMNS)
    for k, acc in chart.rows:
        w.writerow([chart.team, k, repr(acc)])


def read_chart_csv(fh) -> ChartData:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or tuple(header) != CHART_COLUMNS:
        raise InputError(f"chart CSV must start with {','.join(CHART_COLUMNS)}")
    team = None
    rows = []
    for row in reader:
        if not row:
            continue
        t, k, acc = row
        if team is None:
            team = t
        elif t != team:
            raise InputError("chart CSV mixes teams")
        rows.append((int(k), float(acc)))
    return ChartData(team or "", tuple(rows))


def slug(team: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", team).strip("_").lower() or "team"


def render_svg(chart: ChartData) -> str:
    """Horizontal barplot: one bar per order k (k down the vertical axis), accuracy across."""
    n = len(chart.rows)
    plot_w = WIDTH - LEFT - RIGHT
    height = TOP + n * ROW_H + BOTTOM
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{height}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="22" text-anchor="middle" font-size="14">{escape(chart.team)}</text>',
    ]
    for i, (k, acc) in enumerate(chart.rows):
        y = TOP + i * ROW_H
        bar = acc * plot_w
        out.append(f'<text x="{LEFT - 6}" y="{y + 15}" text-anchor="end">k={k}</text>')
        out.append(f'<rect x="{LEFT}" y="{y + 3}" width="{bar:.2f}" height="{ROW_H - 6}" fill="#4c72b0"/>')
        out.append(f'<text x="{LEFT + bar + 4:.2f}" y="{y + 15}">{acc:.2f}</text>')
    axis_y = TOP + n * ROW_H
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{axis_y}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{axis_y}" x2="{LEFT + plot_w}" y2="{axis_y}" stroke="black"/>')
    for t in range(0, 11, 2):
        x = LEFT + plot_w * t / 10
        out.append(f'<line x1="{x:.2f}" y1="{axis_y}" x2="{x:.2f}" y2="{axis_y + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{axis_y + 16}" text-anchor="middle">{t / 10:.1f}</text>')
    out.append(f'<text x="{LEFT + plot_w / 2:.2f}" y="{height - 4}" text-anchor="middle">accuracy</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
