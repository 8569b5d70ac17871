"""Stage 1: 3*lambda grid, cell classification, partition/merge, lune removal.

Rows are indexed top-down and columns left-right, so for a cell (i, j) the
neighbor above is (i-1, j) and the right neighbor is (i, j+1).  The grid
always carries one ring of empty margin cells around the points; anything
beyond the frame behaves like a partitioned empty cell, which makes the
boundary (half-lune) rules uniform with the interior.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DegenerateInstance, InvariantViolation
from .instance import BLUE, RED, Instance
from .numbers import QuadExpr, cmp_int_to_sqrt_multiple
from .geometry import dist_sq

K_BICHROMATIC = "bichromatic"
K_MONO_RED = "mono_red"
K_MONO_BLUE = "mono_blue"
K_EMPTY = "empty"

S_ORIGINAL = "original"
S_PARTITIONED = "partitioned"
S_EXTENDED = "extended"

TRAP_L, TRAP_R, TRAP_T, TRAP_B = "l", "r", "t", "b"
ZONE_LO, ZONE_MID, ZONE_HI = "lo", "mid", "hi"

# direction -> (di, dj, trapezoid facing that way)
SIDE_DIRS = (
    ("left", 0, -1, TRAP_L),
    ("right", 0, 1, TRAP_R),
    ("up", -1, 0, TRAP_T),
    ("down", 1, 0, TRAP_B),
)


class GridFrame:
    """Geometry of the grid: pitch 3*lambda, offset so no point sits on a line."""

    def __init__(self, inst: Instance, lam_sq: int, offset_seed: int = 0):
        if lam_sq <= 0:
            raise DegenerateInstance("lambda must be positive to build a grid")
        self.L = lam_sq
        self.min_x = min(p.x for p in inst.points)
        self.min_y = min(p.y for p in inst.points)
        max_x = max(p.x for p in inst.points)
        max_y = max(p.y for p in inst.points)
        q = Fraction(1, 7) + Fraction(offset_seed % 1000, 7000)
        for _ in range(5000):
            if all(self._index_for(p.x - self.min_x, q) is not None
                   and self._index_for(p.y - self.min_y, q) is not None
                   for p in inst.points):
                break
            q += Fraction(1, 1000)
        else:
            raise InvariantViolation("could not find a grid offset off every point")
        self.q = q
        self.cols = self._index_for(max_x - self.min_x, q) + 2
        self.rows = self._index_for(max_y - self.min_y, q) + 2

    def _index_for(self, c: int, q: Fraction):
        """Index k with lambda*(3k-q-3) < c < lambda*(3k-q), or None if on a line."""
        guess = (c / math.sqrt(self.L) + float(q) + 3.0) / 3.0
        k = max(1, int(guess))
        for _ in range(64):
            lo = Fraction(3 * k) - q - 3
            hi = Fraction(3 * (k + 1)) - q - 3
            c_lo = cmp_int_to_sqrt_multiple(c, lo.numerator, lo.denominator, self.L)
            c_hi = cmp_int_to_sqrt_multiple(c, hi.numerator, hi.denominator, self.L)
            if c_lo == 0 or c_hi == 0:
                return None
            if c_lo > 0 and c_hi < 0:
                return k
            k += 1 if c_hi > 0 else -1
        raise InvariantViolation("grid index search did not converge")

    def lam(self, coef=1):
        return QuadExpr.sqrt_l(self.L, Fraction(coef))

    def x_line(self, j):
        return QuadExpr.of_int(self.min_x, self.L) + self.lam(Fraction(3 * j) - self.q - 3)

    def y_line_band(self, b):
        return QuadExpr.of_int(self.min_y, self.L) + self.lam(Fraction(3 * b) - self.q - 3)

    def band_of_row(self, i):
        return self.rows - 1 - i

    def col_of_point(self, x):
        j = self._index_for(x - self.min_x, self.q)
        if j is None:
            raise InvariantViolation("point on a grid line after nudging")
        return j

    def row_of_point(self, y):
        b = self._index_for(y - self.min_y, self.q)
        if b is None:
            raise InvariantViolation("point on a grid line after nudging")
        return self.rows - 1 - b

    def cell_rect(self, i, j):
        """(x_lo, x_hi, y_lo, y_hi) of cell (i, j) as exact QuadExpr values."""
        b = self.band_of_row(i)
        return (self.x_line(j), self.x_line(j + 1),
                self.y_line_band(b), self.y_line_band(b + 1))

    def vertex(self, jx, by):
        return (self.x_line(jx), self.y_line_band(by))

    def local_coords(self, p, i, j):
        """(u, v) of point p inside cell (i, j), measured from its bottom-left."""
        b = self.band_of_row(i)
        u = QuadExpr.of_int(p.x - self.min_x, self.L) + self.lam(self.q + 3 - 3 * j)
        v = QuadExpr.of_int(p.y - self.min_y, self.L) + self.lam(self.q + 3 - 3 * b)
        return u, v


def classify_local(u, v, lam):
    """(trapezoid, zone) of local coordinates; None for the central sub-cell C5.

    Ties on sub-cell boundaries resolve by the fixed priority B, T, L, R so
    every point lands in exactly one piece.
    """
    lam2 = lam * 2
    lam3 = lam * 3
    if lam <= u <= lam2 and lam <= v <= lam2:
        return None
    if v <= lam and v <= u and v <= lam3 - u:
        t = TRAP_B
        w = u
    elif v >= lam2 and v >= u and v >= lam3 - u:
        t = TRAP_T
        w = u
    elif u <= lam and u <= v and u <= lam3 - v:
        t = TRAP_L
        w = v
    else:
        t = TRAP_R
        w = v
    if w < lam:
        return t, ZONE_LO
    if w > lam2:
        return t, ZONE_HI
    return t, ZONE_MID


class GridCell:
    __slots__ = ("i", "j", "kind", "status", "points", "pieces", "absorbed")

    def __init__(self, i, j):
        self.i = i
        self.j = j
        self.kind = K_EMPTY
        self.status = S_ORIGINAL
        self.points = []          # ColoredPoint, own content
        self.pieces = {}          # (trap, zone) -> [ColoredPoint]; mono/empty only
        self.absorbed = []        # (source_coords, kind_str, [ColoredPoint])

    @property
    def coords(self):
        return (self.i, self.j)

    def trap_points(self, trap):
        out = []
        for (t, _z), pts in self.pieces.items():
            if t == trap:
                out.extend(pts)
        return out


class MonoDigraph:
    """Directed graph on monochromatic cells from Stage 1.1."""

    def __init__(self):
        self.out_edges = {}   # coords -> set of coords
        self.in_edges = {}

    def add_vertex(self, c):
        self.out_edges.setdefault(c, set())
        self.in_edges.setdefault(c, set())

    def add_edge(self, a, b):
        self.out_edges[a].add(b)
        self.in_edges[b].add(a)

    def d_out(self, c):
        return len(self.out_edges.get(c, ()))

    def d_in(self, c):
        return len(self.in_edges.get(c, ()))

    def remove_out_edges(self, c):
        for b in self.out_edges.get(c, set()).copy():
            self.out_edges[c].discard(b)
            self.in_edges[b].discard(c)

    def edges(self):
        return [(a, b) for a, outs in sorted(self.out_edges.items()) for b in sorted(outs)]


class FinalCell:
    """A surviving convex bichromatic cell with its absorbed pieces."""

    __slots__ = ("id", "base", "points", "region", "provenance")

    def __init__(self, cell_id, base, points, region, provenance):
        self.id = cell_id
        self.base = base
        self.points = points         # ColoredPoint list
        self.region = region         # CCW polygon, QuadExpr coords
        self.provenance = provenance

    def point_positions(self):
        return [p.pos for p in self.points]


class CellComplex:
    """Everything Stage 1 produces, for Stage 2 and for rendering."""

    def __init__(self, frame, cells, digraph, trace):
        self.frame = frame
        self.cells = cells           # coords -> GridCell
        self.digraph = digraph
        self.trace = trace
        self.final_cells = []        # filled by finalize_cells
        self.cell_of_point = {}      # point index -> final cell id

    def is_partitioned(self, i, j):
        """Out-of-frame coordinates behave like partitioned empty cells."""
        cell = self.cells.get((i, j))
        if cell is None:
            return True
        return cell.status == S_PARTITIONED

    def final_by_base(self, coords):
        for fc in self.final_cells:
            if fc.base == coords:
                return fc
        return None


def build_grid(inst: Instance, lam_sq: int, offset_seed: int = 0, trace=None):
    """Lay the grid and classify every cell; asserts mono cells keep C5 empty."""
    trace = trace if trace is not None else []
    frame = GridFrame(inst, lam_sq, offset_seed)
    cells = {}
    for i in range(frame.rows):
        for j in range(frame.cols):
            cells[(i, j)] = GridCell(i, j)
    for p in inst.points:
        i = frame.row_of_point(p.y)
        j = frame.col_of_point(p.x)
        if not (0 <= i < frame.rows and 0 <= j < frame.cols):
            raise InvariantViolation(f"point {p.index} fell outside the frame")
        cells[(i, j)].points.append(p)
    lam = frame.lam()
    for cell in cells.values():
        if not cell.points:
            cell.kind = K_EMPTY
            continue
        colors = {p.color for p in cell.points}
        if len(colors) == 2:
            cell.kind = K_BICHROMATIC
            continue
        cell.kind = K_MONO_RED if RED in colors else K_MONO_BLUE
        for p in cell.points:
            u, v = frame.local_coords(p, cell.i, cell.j)
            piece = classify_local(u, v, lam)
            if piece is None:
                raise InvariantViolation(
                    f"mono cell {cell.coords} has point {p.index} in its central sub-cell")
            cell.pieces.setdefault(piece, []).append(p)
    return CellComplex(frame, cells, None, trace)


def build_mono_digraph(cx: CellComplex):
    """Stage 1.1 digraph: edge A->B iff side neighbors, different mono colors,
    and A's trapezoid facing B is nonempty."""
    g = MonoDigraph()
    mono = {c: cell for c, cell in cx.cells.items()
            if cell.kind in (K_MONO_RED, K_MONO_BLUE)}
    for c in mono:
        g.add_vertex(c)
    for (i, j), cell in mono.items():
        for _name, di, dj, trap in SIDE_DIRS:
            nb = mono.get((i + di, j + dj))
            if nb is None or nb.kind == cell.kind:
                continue
            if cell.trap_points(trap):
                g.add_edge((i, j), (i + di, j + dj))
    cx.digraph = g
    return g


def _partition(cx: CellComplex, cell: GridCell, step: str):
    cell.status = S_PARTITIONED
    cx.trace.append(f"stage1.{step} partition cell={cell.coords} kind={cell.kind}")


def apply_step1(cx: CellComplex):
    """Partition every cell with d_in = 0 < d_out, removing out-edges of the
    cell and of its four side neighbors, to a fixpoint."""
    g = cx.digraph
    while True:
        candidate = None
        for c in sorted(g.out_edges):
            cell = cx.cells[c]
            if cell.status == S_PARTITIONED:
                continue
            if g.d_in(c) == 0 and g.d_out(c) > 0:
                candidate = c
                break
        if candidate is None:
            return
        cell = cx.cells[candidate]
        _partition(cx, cell, "step1")
        i, j = candidate
        g.remove_out_edges(candidate)
        for _name, di, dj, _t in SIDE_DIRS:
            if (i + di, j + dj) in g.out_edges:
                g.remove_out_edges((i + di, j + dj))


def apply_step2(cx: CellComplex):
    """Partition every white-parity mono cell with surviving in-degree > 0."""
    g = cx.digraph
    targets = [c for c in sorted(g.out_edges)
               if cx.cells[c].status != S_PARTITIONED
               and (c[0] + c[1]) % 2 == 0
               and g.d_in(c) > 0]
    for c in targets:
        _partition(cx, cx.cells[c], "step2")


def apply_step3(cx: CellComplex):
    """Partition every empty cell and every isolated mono cell."""
    g = cx.digraph
    for c, cell in sorted(cx.cells.items()):
        if cell.status == S_PARTITIONED:
            continue
        if cell.kind == K_EMPTY:
            _partition(cx, cell, "step3")
        elif cell.kind in (K_MONO_RED, K_MONO_BLUE):
            if g.d_in(c) == 0 and g.d_out(c) == 0:
                _partition(cx, cell, "step3")


# Corner-piece lookup: at a grid vertex, which (trapezoid, zone) of a quadrant
# cell faces which side-adjacent quadrant.  Quadrants are named for where the
# cell lies relative to the vertex.
_QUAD_PIECES = {
    ("ll", "lr"): (TRAP_R, ZONE_HI),
    ("ll", "ul"): (TRAP_T, ZONE_HI),
    ("lr", "ll"): (TRAP_L, ZONE_HI),
    ("lr", "ur"): (TRAP_T, ZONE_LO),
    ("ul", "ur"): (TRAP_R, ZONE_LO),
    ("ul", "ll"): (TRAP_B, ZONE_HI),
    ("ur", "ul"): (TRAP_L, ZONE_LO),
    ("ur", "lr"): (TRAP_B, ZONE_LO),
}
_QUAD_ADJ = {"ul": ("ur", "ll"), "ur": ("ul", "lr"), "lr": ("ur", "ll"), "ll": ("ul", "lr")}
_QUAD_DIAG = {"ul": "lr", "ur": "ll", "ll": "ur", "lr": "ul"}


def _vertex_quadrants(cx: CellComplex, jx, by):
    """Quadrant name -> cell coords (may be outside the frame)."""
    row_up = cx.frame.rows - 1 - by
    row_dn = row_up + 1
    return {
        "ul": (row_up, jx - 1),
        "ur": (row_up, jx),
        "ll": (row_dn, jx - 1),
        "lr": (row_dn, jx),
    }


def eliminate_lunes(cx: CellComplex):
    """Stage 1.3: route every lune corner piece to an extended cell (or prove it empty).

    Processed per grid vertex so the corner square shared by two lunes is
    assigned exactly once.  Returns {extended coords -> [(source, kind, pts)]}
    with the per-vertex absorptions; unassigned points raise.
    """
    frame = cx.frame
    lam = frame.lam()
    for by in range(frame.rows + 1):
        for jx in range(frame.cols + 1):
            quads = _vertex_quadrants(cx, jx, by)
            part = {name for name, c in quads.items() if cx.is_partitioned(*c)}
            ext = [name for name in ("ul", "ur", "lr", "ll") if name not in part]
            pieces = []   # (host_name, piece_points)
            lunes_here = []
            for host in ("ul", "ur", "lr", "ll"):
                if host not in part:
                    continue
                for other in _QUAD_ADJ[host]:
                    if other not in part:
                        continue
                    lunes_here.append(tuple(sorted((host, other))))
                    host_cell = cx.cells.get(quads[host])
                    if host_cell is None:
                        continue
                    pts = host_cell.pieces.get(_QUAD_PIECES[(host, other)], [])
                    if pts:
                        pieces.append((host, other, pts))
            lunes_here = sorted(set(lunes_here))
            virtual = any(quads[a] not in cx.cells or quads[b] not in cx.cells
                          for a, b in lunes_here)
            if virtual and lunes_here:
                cx.trace.append(f"stage1.halflune vertex=({jx},{by})")
            if not lunes_here:
                if pieces:
                    raise InvariantViolation("corner pieces without a lune")
                continue
            if len(ext) >= 3 or (len(ext) == 2 and _QUAD_DIAG[ext[0]] == ext[1]):
                if pieces:
                    raise InvariantViolation(
                        f"unexpected lune pieces at vertex ({jx},{by})")
                continue
            if len(ext) == 2:
                # case (a): each piece joins the extended flank on its own side
                for host, _other, pts in pieces:
                    flank = next(n for n in _QUAD_ADJ[host] if n in ext)
                    _absorb(cx, quads[flank], quads[host], "lune_tri", pts)
                _trace_lune_cases(cx, jx, by, lunes_here, part, ext)
            elif len(ext) == 1:
                qe = ext[0]
                qd = _QUAD_DIAG[qe]
                vtx = frame.vertex(jx, by)
                stray = []
                for host, other, pts in pieces:
                    if host != qd:
                        _absorb(cx, quads[qe], quads[host], "lune_tri", pts)
                        continue
                    near, far = [], []
                    for p in pts:
                        dx = QuadExpr.of_int(p.x, frame.L) - vtx[0]
                        dy = QuadExpr.of_int(p.y, frame.L) - vtx[1]
                        if (dx * dx + dy * dy) <= frame.L:
                            near.append(p)
                        else:
                            far.append(p)
                    if near:
                        _absorb(cx, quads[qe], quads[host], "disk", near)
                    stray.extend(far)
                if stray:
                    raise InvariantViolation(
                        f"lune corner points {[p.index for p in stray]} at vertex "
                        f"({jx},{by}) lie outside the unit disk and stay unassigned")
                _trace_lune_cases(cx, jx, by, lunes_here, part, ext)
            else:
                # case (d): all four quadrants partitioned; corners must be empty
                if pieces:
                    bad = [p.index for _h, _o, pts in pieces for p in pts]
                    raise InvariantViolation(
                        f"case (d) corner at vertex ({jx},{by}) contains points {bad}")
                cx.trace.append(f"stage1.lune case=d vertex=({jx},{by})")


def _trace_lune_cases(cx, jx, by, lunes_here, part, ext):
    order = {"ul": 0, "ur": 1, "lr": 2, "ll": 3}
    for a, b in lunes_here:
        flanks = [n for n in ("ul", "ur", "lr", "ll") if n not in (a, b)]
        f_ext = [n for n in flanks if n in ext]
        f_part = [n for n in flanks if n in part]
        if len(f_ext) == 2:
            label = "a"
        elif len(f_ext) == 1:
            label = "b" if order[f_ext[0]] > order[f_part[0]] else "c"
        else:
            label = "d"
        cx.trace.append(f"stage1.lune case={label} vertex=({jx},{by}) lune={a}-{b}")


def _absorb(cx: CellComplex, target_coords, source_coords, kind, pts):
    target = cx.cells.get(target_coords)
    if target is None or target.status == S_PARTITIONED:
        raise InvariantViolation(
            f"piece from {source_coords} routed to non-extended cell {target_coords}")
    target.absorbed.append((source_coords, kind, list(pts)))
    if target.status == S_ORIGINAL:
        target.status = S_EXTENDED


def merge_trapezoids(cx: CellComplex):
    """Stage 1.2 aftermath: whole trapezoids of partitioned cells join extended
    side neighbors; facing pairs of partitioned cells become lunes (middle
    squares asserted empty here, corners handled by eliminate_lunes)."""
    for coords in sorted(cx.cells):
        cell = cx.cells[coords]
        if cell.status != S_PARTITIONED:
            continue
        i, j = coords
        for _name, di, dj, trap in SIDE_DIRS:
            nb = (i + di, j + dj)
            pts = cell.trap_points(trap)
            if not cx.is_partitioned(*nb):
                if pts:
                    _absorb(cx, nb, coords, "trap_" + trap, pts)
                elif cx.cells[nb].status == S_ORIGINAL:
                    cx.cells[nb].status = S_EXTENDED
                continue
            mid = cell.pieces.get((trap, ZONE_MID), [])
            if mid:
                raise InvariantViolation(
                    f"lune between {coords} and {nb} has points "
                    f"{[p.index for p in mid]} in its middle sub-cell")


def _trap_polygon(rect, lam, trap):
    x0, x1, y0, y1 = rect
    if trap == TRAP_L:
        return [(x0, y0), (x0 + lam, y0 + lam), (x0 + lam, y1 - lam), (x0, y1)]
    if trap == TRAP_R:
        return [(x1, y0), (x1, y1), (x1 - lam, y1 - lam), (x1 - lam, y0 + lam)]
    if trap == TRAP_T:
        return [(x0, y1), (x0 + lam, y1 - lam), (x1 - lam, y1 - lam), (x1, y1)]
    return [(x0, y0), (x1, y0), (x1 - lam, y0 + lam), (x0 + lam, y0 + lam)]


def finalize_cells(cx: CellComplex):
    """Emit FinalCells, check bichromaticity/coverage/size, map points to cells."""
    frame = cx.frame
    lam = frame.lam()
    final = []
    assigned = {}
    for coords in sorted(cx.cells):
        cell = cx.cells[coords]
        if cell.status == S_PARTITIONED:
            continue
        if cell.kind == K_EMPTY and not cell.absorbed:
            continue
        pts = list(cell.points)
        provenance = []
        corners = []
        x0, x1, y0, y1 = frame.cell_rect(*coords)
        corners.extend([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
        for source, kind, piece_pts in cell.absorbed:
            pts.extend(piece_pts)
            provenance.append((source, kind))
            if kind.startswith("trap_"):
                corners.extend(_trap_polygon(frame.cell_rect(*source), lam, kind[-1]))
            else:
                corners.extend((QuadExpr.of_int(p.x, frame.L),
                                QuadExpr.of_int(p.y, frame.L)) for p in piece_pts)
        if not pts:
            continue
        colors = {p.color for p in pts}
        if len(colors) != 2:
            raise InvariantViolation(
                f"final cell {coords} is monochromatic ({sorted(colors)})")
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        for span in (max(xs) - min(xs), max(ys) - min(ys)):
            if cmp_int_to_sqrt_multiple(span, 5, 1, frame.L) > 0:
                raise InvariantViolation(
                    f"final cell {coords} spans more than 5*lambda")
        from .geometry import convex_hull
        region = convex_hull(corners)
        fc = FinalCell(len(final), coords, sorted(pts, key=lambda p: p.index),
                       region, provenance)
        final.append(fc)
        for p in pts:
            if p.index in assigned:
                raise InvariantViolation(
                    f"point {p.index} assigned to cells {assigned[p.index]} and {coords}")
            assigned[p.index] = coords
            cx.cell_of_point[p.index] = fc.id
    n_points = sum(len(c.points) for c in cx.cells.values())
    if len(assigned) != n_points:
        missing = n_points - len(assigned)
        raise InvariantViolation(f"{missing} points left unassigned after Stage 1")
    cx.final_cells = final
    return final


def run_stage1(inst: Instance, lam_sq: int, offset_seed: int = 0, trace=None):
    """Full Stage 1 pipeline; returns the CellComplex with final cells ready."""
    cx = build_grid(inst, lam_sq, offset_seed, trace)
    build_mono_digraph(cx)
    apply_step1(cx)
    apply_step2(cx)
    apply_step3(cx)
    merge_trapezoids(cx)
    eliminate_lunes(cx)
    finalize_cells(cx)
    return cx


def dump_cell_complex(cx: CellComplex):
    """Versioned text dump (consumed by the SVG renderer and tests)."""
    frame = cx.frame
    lines = [f"bpst-cells v1 L={frame.L} q={frame.q.numerator}/{frame.q.denominator} "
             f"min_x={frame.min_x} min_y={frame.min_y} rows={frame.rows} cols={frame.cols}"]
    for coords in sorted(cx.cells):
        cell = cx.cells[coords]
        pts = ",".join(str(p.index) for p in cell.points)
        lines.append(f"cell {coords[0]} {coords[1]} kind={cell.kind} "
                     f"status={cell.status} pts={pts}")
    for fc in cx.final_cells:
        pts = ",".join(str(p.index) for p in fc.points)
        region = ";".join(f"{float(x):.6f},{float(y):.6f}" for x, y in fc.region)
        lines.append(f"final {fc.id} base={fc.base[0]},{fc.base[1]} pts={pts} region={region}")
    return "\n".join(lines) + "\n"
