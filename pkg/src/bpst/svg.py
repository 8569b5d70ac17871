"""Deterministic SVG rendering of instances, Stage-1 cell complexes and trees.

Output bytes depend only on the inputs: coordinates are formatted with a
fixed precision and elements are emitted in a fixed order, so golden-file
comparisons are stable across runs and platforms.
"""

from __future__ import annotations

from .instance import BLUE, RED, SCALE
from .grid import S_PARTITIONED

MARGIN = 0.6
POINT_R = 0.07
COLOR = {RED: "#d62728", BLUE: "#1f77b4"}


def _fmt(v):
    return f"{float(v) / SCALE:.6f}"


def _fmtu(v):
    return f"{v:.6f}"


class _Doc:
    def __init__(self):
        self.parts = []

    def add(self, s):
        self.parts.append(s)


def render_svg(inst=None, cell_complex=None, edges=None, shade_lunes=False,
               highlight_edges=None):
    """SVG text for any combination of points, Stage-1 cells and tree edges."""
    xs, ys = [], []
    if inst is not None:
        xs.extend(p.x / SCALE for p in inst.points)
        ys.extend(p.y / SCALE for p in inst.points)
    if cell_complex is not None:
        fr = cell_complex.frame
        xs.extend((float(fr.x_line(0)) / SCALE, float(fr.x_line(fr.cols)) / SCALE))
        ys.extend((float(fr.y_line_band(0)) / SCALE,
                   float(fr.y_line_band(fr.rows)) / SCALE))
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
    y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN
    w, h = x1 - x0, y1 - y0
    doc = _Doc()
    doc.add(f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{_fmtu(x0)} {_fmtu(-y1)} {_fmtu(w)} {_fmtu(h)}" '
            f'width="800" height="{800.0 * h / w:.0f}">')
    doc.add(f'<rect x="{_fmtu(x0)}" y="{_fmtu(-y1)}" width="{_fmtu(w)}" '
            f'height="{_fmtu(h)}" fill="white"/>')
    if cell_complex is not None:
        _render_cells(doc, cell_complex, shade_lunes)
    if edges and inst is not None:
        for a, b in edges:
            pa, pb = inst.points[a], inst.points[b]
            doc.add(f'<line class="tree" x1="{_fmt(pa.x)}" y1="{_fmt(-pa.y)}" '
                    f'x2="{_fmt(pb.x)}" y2="{_fmt(-pb.y)}" '
                    f'stroke="#444444" stroke-width="0.03"/>')
    if highlight_edges and inst is not None:
        for a, b in highlight_edges:
            pa, pb = inst.points[a], inst.points[b]
            doc.add(f'<line class="link" x1="{_fmt(pa.x)}" y1="{_fmt(-pa.y)}" '
                    f'x2="{_fmt(pb.x)}" y2="{_fmt(-pb.y)}" '
                    f'stroke="#2ca02c" stroke-width="0.05"/>')
    if inst is not None:
        for p in inst.points:
            doc.add(f'<circle class="pt" cx="{_fmt(p.x)}" cy="{_fmt(-p.y)}" '
                    f'r="{_fmtu(POINT_R)}" fill="{COLOR[p.color]}"/>')
    doc.add("</svg>")
    return "\n".join(doc.parts) + "\n"


def _render_cells(doc, cx, shade_lunes):
    fr = cx.frame

    def sx(q):
        return f"{float(q) / SCALE:.6f}"

    def sy(q):
        return f"{-float(q) / SCALE:.6f}"

    for fc in cx.final_cells:
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in fc.region)
        doc.add(f'<polygon class="cell" points="{pts}" fill="#fdf6e3" '
                f'fill-opacity="0.8" stroke="#b58900" stroke-width="0.02"/>')
    if shade_lunes:
        from .grid import _trap_polygon, SIDE_DIRS
        lam = fr.lam()
        for coords in sorted(cx.cells):
            cell = cx.cells[coords]
            if cell.status != S_PARTITIONED:
                continue
            i, j = coords
            for _name, di, dj, trap in SIDE_DIRS:
                if not cx.is_partitioned(i + di, j + dj):
                    continue
                poly = _trap_polygon(fr.cell_rect(i, j), lam, trap)
                pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in poly)
                doc.add(f'<polygon class="lune" points="{pts}" fill="#cccccc" '
                        f'fill-opacity="0.5" stroke="none"/>')
    for j in range(fr.cols + 1):
        x = sx(fr.x_line(j))
        doc.add(f'<line class="grid" x1="{x}" y1="{sy(fr.y_line_band(0))}" '
                f'x2="{x}" y2="{sy(fr.y_line_band(fr.rows))}" '
                f'stroke="#dddddd" stroke-width="0.015"/>')
    for b in range(fr.rows + 1):
        y = sy(fr.y_line_band(b))
        doc.add(f'<line class="grid" x1="{sx(fr.x_line(0))}" y1="{y}" '
                f'x2="{sx(fr.x_line(fr.cols))}" y2="{y}" '
                f'stroke="#dddddd" stroke-width="0.015"/>')


def render_stages(result):
    """Per-stage SVGs for --stages: name -> svg text."""
    inst = result.inst
    cx = result.cell_complex
    out = {}
    out["stage0_points"] = render_svg(inst=inst)
    if cx is not None:
        out["stage1_cells"] = render_svg(inst=inst, cell_complex=cx, shade_lunes=True)
        star_edges = [e for t in result.star_trees.values() for e in t.edges]
        out["stage2_stars"] = render_svg(inst=inst, cell_complex=cx, edges=star_edges)
        inter = [e for e in result.edges if e not in set(star_edges)]
        out["stage2_tree"] = render_svg(inst=inst, cell_complex=cx,
                                        edges=result.edges, highlight_edges=inter)
    else:
        out["stage2_tree"] = render_svg(inst=inst, edges=result.edges)
    return out
