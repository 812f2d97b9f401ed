"""Static SVG rendering of contra plots and supplement tables.

A contra plot is an interval chart juxtaposed with a metadata table: one
row per study, the credible interval drawn as a horizontal segment with
endpoint ticks and a posterior-median dot, a vertical zero line, an
optional gold threshold line, and a table section whose last column is the
"Ls%" score. Row order is rank order. The x-axis is linear.

Rendering is deterministic: identical inputs produce byte-identical SVG.
All layout metrics live in STYLE so golden-file tests stay stable. Marker
size is uniform; sample size does not scale anything.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .datasets import COLUMNS as CSV_COLUMNS
from .datasets import _fmt_number
from .pipeline import ContraEntry, SignView

__all__ = ["PlotOptions", "render_contra_plot", "render_supplement_table", "STYLE"]

STYLE = {
    "row_height": 22.0,
    "plot_width": 400.0,
    "plot_pad": 16.0,
    "margin_left": 8.0,
    "margin_right": 8.0,
    "table_gap": 14.0,
    "top": 26.0,
    "axis_height": 36.0,
    "font_family": "Helvetica, Arial, sans-serif",
    "font_size": 11.0,
    "interval_color": "#1f4e79",
    "median_color": "#1f4e79",
    "zero_color": "#555555",
    "threshold_color": "#c9a227",
    "highlight_text": "#000000",
    "tick_half": 4.0,
    "median_radius": 2.6,
}

DEFAULT_COLUMNS = ("study", "year", "species", "group_x", "group_y")

_COLUMN_WIDTHS = {
    "id": 30.0,
    "study": 64.0,
    "year": 40.0,
    "species": 34.0,
    "group_x": 128.0,
    "group_y": 128.0,
    "units": 52.0,
    "pmid": 62.0,
    "location": 52.0,
    "alpha_dm": 52.0,
    "Ls%": 46.0,
}

_COLUMN_TITLES = {"species": "Sp", "group_x": "Ctrl", "group_y": "Tx"}


@dataclass(frozen=True)
class PlotOptions:
    sign_view: SignView
    threshold: float | None = None
    columns: tuple[str, ...] = DEFAULT_COLUMNS
    axis_limits: tuple[float, float] | None = None
    percent_format: int = 0

    def __post_init__(self):
        if self.threshold is not None:
            if self.threshold == 0:
                raise ValueError("threshold overlay must be nonzero")
            if self.sign_view is SignView.DECREASE and self.threshold > 0:
                raise ValueError("decrease view takes a negative threshold")
            if self.sign_view is SignView.INCREASE and self.threshold < 0:
                raise ValueError("increase view takes a positive threshold")
        for col in self.columns:
            if col not in _COLUMN_WIDTHS:
                raise ValueError(f"unknown metadata column {col!r}")
        if self.axis_limits is not None and self.axis_limits[0] >= self.axis_limits[1]:
            raise ValueError("axis_limits must be an increasing pair")


def _column_value(entry: ContraEntry, name: str) -> str:
    r = entry.record
    return str({
        "id": r.id,
        "study": r.study,
        "year": r.year,
        "species": r.species,
        "group_x": r.group_x_label,
        "group_y": r.group_y_label,
        "units": r.units,
        "pmid": r.pmid,
        "location": r.location,
        "alpha_dm": r.alpha_dm_text,
    }[name])


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    raw = (hi - lo) / max(target, 2)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    first = math.ceil(lo / step)
    last = math.floor(hi / step)
    return [i * step for i in range(first, last + 1)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_contra_plot(entries, opts: PlotOptions) -> str:
    """Render ranked entries as one SVG document (returned as text)."""
    entries = list(entries)
    if not entries:
        raise ValueError("cannot render an empty entry list")
    if sorted(e.rank for e in entries) != list(range(1, len(entries) + 1)):
        raise ValueError("entry ranks must form a permutation of 1..N")
    entries = sorted(entries, key=lambda e: e.rank)

    if opts.axis_limits is not None:
        xmin, xmax = opts.axis_limits
    else:
        points = [e.interval.lo for e in entries] + [e.interval.hi for e in entries] + [0.0]
        if opts.threshold is not None:
            points.append(opts.threshold)
        lo, hi = min(points), max(points)
        pad = 0.05 * (hi - lo) or 0.05
        xmin, xmax = lo - pad, hi + pad

    s = STYLE
    n = len(entries)
    plot_x0 = s["margin_left"]
    inner_x0 = plot_x0 + s["plot_pad"]
    inner_w = s["plot_width"] - 2 * s["plot_pad"]
    scale = inner_w / (xmax - xmin)

    def sx(v: float) -> float:
        return inner_x0 + (v - xmin) * scale

    table_x0 = plot_x0 + s["plot_width"] + s["table_gap"]
    columns = list(opts.columns)
    if "Ls%" not in columns:
        columns.append("Ls%")
    col_x = {}
    x = table_x0
    for col in columns:
        col_x[col] = x
        x += _COLUMN_WIDTHS[col]
    width = x + s["margin_right"]
    rows_bottom = s["top"] + n * s["row_height"]
    height = rows_bottom + s["axis_height"]

    out = io.StringIO()
    w = out.write
    w('<?xml version="1.0" encoding="UTF-8"?>\n')
    w(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
      f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
      f'font-family="{s["font_family"]}" font-size="{_fmt(s["font_size"])}">\n')

    # reference lines span the full row block
    w(f'  <line class="zero-line" x1="{_fmt(sx(0.0))}" y1="{_fmt(s["top"])}" '
      f'x2="{_fmt(sx(0.0))}" y2="{_fmt(rows_bottom)}" stroke="{s["zero_color"]}" '
      f'stroke-width="1" stroke-dasharray="3,3"/>\n')
    if opts.threshold is not None and xmin <= opts.threshold <= xmax:
        tx = sx(opts.threshold)
        w(f'  <line class="threshold-line" x1="{_fmt(tx)}" y1="{_fmt(s["top"])}" '
          f'x2="{_fmt(tx)}" y2="{_fmt(rows_bottom)}" stroke="{s["threshold_color"]}" '
          f'stroke-width="1.5"/>\n')

    # header
    for col in columns:
        title = _COLUMN_TITLES.get(col, col) if col != "Ls%" else "Ls%"
        w(f'  <text class="header" x="{_fmt(col_x[col])}" y="{_fmt(s["top"] - 8)}" '
          f'font-weight="bold">{escape(title)}</text>\n')

    percent = opts.percent_format
    for i, entry in enumerate(entries):
        cy = s["top"] + (i + 0.5) * s["row_height"]
        lo_v, hi_v = entry.interval.lo, entry.interval.hi
        x1 = sx(min(max(lo_v, xmin), xmax))
        x2 = sx(min(max(hi_v, xmin), xmax))
        w(f'  <g class="row" data-id="{entry.record.id}">\n')
        w(f'    <line class="interval-line" x1="{_fmt(x1)}" y1="{_fmt(cy)}" '
          f'x2="{_fmt(x2)}" y2="{_fmt(cy)}" stroke="{s["interval_color"]}" '
          f'stroke-width="1.5"/>\n')
        th = s["tick_half"]
        for value, px in ((lo_v, x1), (hi_v, x2)):
            if xmin <= value <= xmax:
                w(f'    <line class="interval-tick" x1="{_fmt(px)}" y1="{_fmt(cy - th)}" '
                  f'x2="{_fmt(px)}" y2="{_fmt(cy + th)}" stroke="{s["interval_color"]}" '
                  f'stroke-width="1.5"/>\n')
            else:
                # arrow toward the off-scale true endpoint
                tip = -6.0 if value < xmin else 6.0
                w(f'    <path class="clip-marker" d="M {_fmt(px - tip)} {_fmt(cy - th)} '
                  f'L {_fmt(px)} {_fmt(cy)} L {_fmt(px - tip)} {_fmt(cy + th)} Z" '
                  f'fill="{s["interval_color"]}"/>\n')
        if xmin <= entry.median <= xmax:
            w(f'    <circle class="median-dot" cx="{_fmt(sx(entry.median))}" '
              f'cy="{_fmt(cy)}" r="{_fmt(s["median_radius"])}" '
              f'fill="{s["median_color"]}"/>\n')
        ty = cy + s["font_size"] / 2 - 2
        for col in columns:
            if col == "Ls%":
                text = f"{entry.delta_l * 100:.{percent}f}%"
            else:
                text = _column_value(entry, col)
            w(f'    <text class="cell" x="{_fmt(col_x[col])}" y="{_fmt(ty)}">'
              f'{escape(text)}</text>\n')
        w('  </g>\n')

    # axis
    w(f'  <line class="axis" x1="{_fmt(plot_x0)}" y1="{_fmt(rows_bottom)}" '
      f'x2="{_fmt(plot_x0 + s["plot_width"])}" y2="{_fmt(rows_bottom)}" '
      f'stroke="#333333" stroke-width="1"/>\n')
    for t in _nice_ticks(xmin, xmax):
        tx = sx(t)
        w(f'  <line class="axis-tick" x1="{_fmt(tx)}" y1="{_fmt(rows_bottom)}" '
          f'x2="{_fmt(tx)}" y2="{_fmt(rows_bottom + 4)}" stroke="#333333" '
          f'stroke-width="1"/>\n')
        w(f'  <text class="axis-label" x="{_fmt(tx)}" y="{_fmt(rows_bottom + 16)}" '
          f'text-anchor="middle">{escape(f"{t * 100:g}%")}</text>\n')
    w(f'  <text class="axis-title" x="{_fmt(plot_x0 + s["plot_width"] / 2)}" '
      f'y="{_fmt(rows_bottom + 30)}" text-anchor="middle">'
      'relative difference in means</text>\n')
    w('</svg>\n')
    return out.getvalue()


def render_supplement_table(entries, fmt: str = "csv") -> str:
    """Full per-study records for the plotted entries, keyed by id.

    CSV uses the dataset schema; HTML emits a plain table fragment. An
    empty entry list yields a header-only table.
    """
    entries = list(entries)

    def row_values(entry: ContraEntry):
        r = entry.record
        return [
            r.id, r.study, r.year,
            r.group_x_label, _fmt_number(r.control.mean), _fmt_number(r.control.sd), r.control.n,
            r.group_y_label, _fmt_number(r.experiment.mean), _fmt_number(r.experiment.sd), r.experiment.n,
            r.units, r.alpha_dm_text, r.species, r.pmid, r.location, r.reported_sign,
        ]

    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for entry in entries:
            writer.writerow(row_values(entry))
        return out.getvalue()
    if fmt == "html":
        head = "".join(f"<th>{escape(c)}</th>" for c in CSV_COLUMNS)
        lines = [f"<table><thead><tr>{head}</tr></thead><tbody>"]
        for entry in entries:
            cells = "".join(f"<td>{escape(str(v))}</td>" for v in row_values(entry))
            lines.append(f'<tr data-id="{entry.record.id}">{cells}</tr>')
        lines.append("</tbody></table>")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown supplement format {fmt!r}")
