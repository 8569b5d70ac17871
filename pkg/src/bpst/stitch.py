"""Stage 2.2: join per-cell star trees into one planar bichromatic tree.

Cells are visited in BFS order; a side-adjacent target is connected through
the shared grid edge (with the convex-hull case analysis deciding whether a
flanking cell has to be wired in first), a diagonal-adjacent target through
the shared diagonal that appears when both intervening cells were
partitioned.  Every selection ("rightmost", "closest to the line",
"bottommost") is the extremal cell point whose corridor triangle is crossed
by no existing tree edge, exactly as the construction requires.

One canonical routine serves all four directions: the comparators, corner
points and flank coordinates are derived from the direction vector instead
of rotating coordinates.
"""

from __future__ import annotations

from collections import deque

from .errors import (CaseInvariantViolation, ForestRemains, InvariantViolation,
                     SweepExhausted)
from .geometry import (INSIDE, ON_BOUNDARY, convex_hull, cross_of_line, dist_sq,
                       point_in_convex_polygon, point_in_triangle,
                       segment_crosses_triangle, segments_properly_cross)
from .numbers import QuadExpr, sign
from .startree import attach_external_point


class GlobalTree:
    """The growing tree T': edges plus an incremental planarity guard."""

    def __init__(self, inst, lam_sq):
        self.inst = inst
        self.lam_sq = lam_sq
        self.edges = []
        self.segs = []
        self.parent = list(range(inst.n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def connected(self, a, b):
        return self.find(a) == self.find(b)

    def add_edge(self, a, b, bound_sq=None):
        pa = self.inst.points[a]
        pb = self.inst.points[b]
        if pa.color == pb.color:
            raise InvariantViolation(f"edge ({a},{b}) is monochromatic")
        seg = (pa.pos, pb.pos)
        for k, other in enumerate(self.segs):
            if segments_properly_cross(*seg, *other):
                raise InvariantViolation(
                    f"edge ({a},{b}) crosses existing edge {self.edges[k]}")
        if bound_sq is not None and dist_sq(*seg) > bound_sq:
            raise InvariantViolation(
                f"edge ({a},{b}) longer than the stage bound")
        if self.connected(a, b):
            raise InvariantViolation(f"edge ({a},{b}) closes a cycle")
        self.edges.append((a, b))
        self.segs.append(seg)
        self.parent[self.find(a)] = self.find(b)


def build_cell_adjacency(cx):
    """Symmetric adjacency over final cells: s-pairs share a grid edge,
    d-pairs share the diagonal left by two partitioned intervening cells."""
    by_base = {fc.base: fc for fc in cx.final_cells}
    adj = {fc.id: set() for fc in cx.final_cells}

    def link(a, b):
        adj[a.id].add(b.id)
        adj[b.id].add(a.id)

    for fc in cx.final_cells:
        i, j = fc.base
        for di, dj in ((1, 0), (0, 1)):
            other = by_base.get((i + di, j + dj))
            if other is not None:
                link(fc, other)
        for (ti, tj), (c1, c2) in (
                ((i - 1, j + 1), ((i - 1, j), (i, j + 1))),
                ((i - 1, j - 1), ((i, j - 1), (i - 1, j)))):
            other = by_base.get((ti, tj))
            if other is not None and cx.is_partitioned(*c1) and cx.is_partitioned(*c2):
                link(fc, other)
    return {k: sorted(v) for k, v in adj.items()}


def find_unblocked_point(points, boundary, tree: GlobalTree, key, label="point"):
    """Extremal point of `points` whose triangle to the boundary segment is
    crossed by no tree edge.  `key(p)` orders candidates, most extremal first."""
    a, b = boundary
    for p in sorted(points, key=key):
        tri_blocked = False
        for seg in tree.segs:
            if segment_crosses_triangle(seg[0], seg[1], p.pos, a, b):
                tri_blocked = True
                break
        if not tri_blocked:
            return p
    raise SweepExhausted(f"no {label} passes the empty-triangle test")


class Stitcher:
    def __init__(self, inst, cx, star_trees, lam_sq, trace=None):
        self.inst = inst
        self.cx = cx
        self.trees = star_trees            # final cell id -> StarTree
        self.lam_sq = lam_sq
        self.trace = trace if trace is not None else []
        self.by_base = {fc.base: fc for fc in cx.final_cells}
        self.adj = build_cell_adjacency(cx)
        self.tree = GlobalTree(inst, lam_sq)
        for fc in cx.final_cells:
            for a, b in star_trees[fc.id].edges:
                self.tree.add_edge(a, b, bound_sq=50 * lam_sq)
        self.bound_sq = 128 * lam_sq       # (8*sqrt(2)*lambda)^2

    # -- helpers ---------------------------------------------------------

    def _cell_rep(self, fc):
        return fc.points[0].index

    def _connected_to(self, fc, other):
        return self.tree.connected(self._cell_rep(fc), self._cell_rep(other))

    def _in_root(self, fc, root):
        return self.tree.connected(self._cell_rep(fc), self._cell_rep(root))

    def _attach(self, point, target_fc):
        edge = attach_external_point(self.trees[target_fc.id], point,
                                     forbidden=self.tree.segs)
        self.tree.add_edge(edge[0], edge[1], bound_sq=self.bound_sq)
        return edge

    def _frame_lam(self, coef=1):
        return self.cx.frame.lam(coef)

    # -- case 1: diagonal neighbors --------------------------------------

    def connect_d_adjacent(self, src, dst):
        """Shared diagonal edge ab; p = closest src point to line(ab) with an
        empty triangle; attach p into dst's tree."""
        frame = self.cx.frame
        (si, sj), (ti, tj) = src.base, dst.base
        x0, x1, y0, y1 = frame.cell_rect(si, sj)
        vx = x1 if tj > sj else x0
        vy = y1 if ti < si else y0
        dx = 1 if tj > sj else -1
        dy = 1 if ti < si else -1
        lam = self._frame_lam()
        a = (vx + lam * (-dx), vy + lam * dy)
        b = (vx + lam * dx, vy + lam * (-dy))

        def key(p):
            c = cross_of_line(a, b, p.pos)
            return (_SqKey(c * c), p.index)

        p = find_unblocked_point(src.points, (a, b), self.tree, key, "case-1 point")
        edge = self._attach(p, dst)
        self.trace.append(
            f"stage2.case1 src={src.base} dst={dst.base} p={p.index} edge={edge}")

    # -- case 2: side neighbors ------------------------------------------

    def connect_s_adjacent(self, src, dst, root):
        """Full Case 2 with sub-cases 2.1, 2.2(1) and 2.2(2)."""
        frame = self.cx.frame
        (si, sj), (ti, tj) = src.base, dst.base
        ddi, ddj = ti - si, tj - sj
        x0, x1, y0, y1 = frame.cell_rect(si, sj)
        if ddj == 1:
            c1, c2 = (x1, y0), (x1, y1)
            extremal = lambda p: (-p.x, p.index)
        elif ddj == -1:
            c1, c2 = (x0, y0), (x0, y1)
            extremal = lambda p: (p.x, p.index)
        elif ddi == -1:
            c1, c2 = (x0, y1), (x1, y1)
            extremal = lambda p: (-p.y, p.index)
        else:
            c1, c2 = (x0, y0), (x1, y0)
            extremal = lambda p: (p.y, p.index)

        p = find_unblocked_point(src.points, (c1, c2), self.tree, extremal,
                                 "case-2 source point")
        own = {q.index for q in src.points} | {q.index for q in dst.points}
        hull = convex_hull([q.pos for q in dst.points] + [p.pos])
        intruders = []
        for q in self.inst.points:
            if q.index in own:
                continue
            if point_in_convex_polygon(q.pos, hull) in (INSIDE, ON_BOUNDARY):
                intruders.append(q)
        if not intruders:
            edge = self._attach(p, dst)
            self.trace.append(f"stage2.case2.1 src={src.base} dst={dst.base} "
                              f"p={p.index} edge={edge}")
            return

        if ddj != 0:
            sides = ((-1, 0), (1, 0))
        else:
            sides = ((0, -1), (0, 1))
        side_pts = {s: [] for s in sides}
        flank_bases = {}
        for s in sides:
            flank_bases[s] = ((si + s[0], sj + s[1]), (ti + s[0], tj + s[1]))
        for q in intruders:
            fc_id = self.cx.cell_of_point.get(q.index)
            home = self.cx.final_cells[fc_id].base if fc_id is not None else None
            placed = False
            for s in sides:
                if home in flank_bases[s]:
                    side_pts[s].append(q)
                    placed = True
                    break
            if not placed:
                raise CaseInvariantViolation(
                    f"hull intruder {q.index} from cell {home} is not in a flank "
                    f"of {src.base}->{dst.base}")
        active = [s for s in sides if side_pts[s]]
        if len(active) == 2:
            # spec open question: prefer the side whose intruder is nearest
            # the shared boundary line
            def nearest(s):
                return min(_SqKey(cross_of_line(c1, c2, q.pos) ** 2)
                           for q in side_pts[s])
            active.sort(key=lambda s: (nearest(s), s))
            self.trace.append(
                f"stage2.case2.2 both-rows src={src.base} dst={dst.base} "
                f"chose side={active[0]}")
        side = active[0]
        f_s_base, f_d_base = flank_bases[side]
        f_s = self.by_base.get(f_s_base)
        f_d = self.by_base.get(f_d_base)
        f_s_part = self.cx.is_partitioned(*f_s_base)
        f_d_part = self.cx.is_partitioned(*f_d_base)
        if f_s_part == f_d_part:
            raise CaseInvariantViolation(
                f"flanks {f_s_base} and {f_d_base} are both "
                f"{'partitioned' if f_s_part else 'extended'}")

        in_fs = [q for q in side_pts[side]
                 if f_s is not None and self.cx.cell_of_point.get(q.index) == f_s.id]
        in_fd = [q for q in side_pts[side]
                 if f_d is not None and self.cx.cell_of_point.get(q.index) == f_d.id]
        if in_fs and in_fd:
            raise CaseInvariantViolation(
                f"hull intrudes into both {f_s_base} and {f_d_base}")

        # vertex shared by src, dst and both flanks, plus the quadrant signs
        # (relative to that vertex) of the diagonal flank F_d and of F_s
        if ddj != 0:
            vx = x1 if ddj == 1 else x0
            vy = y1 if side[0] == -1 else y0
            dxd, dyd = ddj, -side[0]
            fs_quad = (-dxd, dyd)
        else:
            vy = y1 if ddi == -1 else y0
            vx = x1 if side[1] == 1 else x0
            dxd, dyd = side[1], -ddi
            fs_quad = (dxd, -dyd)

        if in_fs:
            self._case_221(src, dst, f_s, (vx, vy), (dxd, dyd), root)
        else:
            self._case_222(src, dst, f_d, p, (vx, vy), (dxd, dyd), fs_quad,
                           ddj != 0, root)

    def _case_221(self, src, dst, f_s, vtx, quad, root):
        """Intruders in the flank beside the source: connect dst's tree to the
        flank tree via q; the src-flank link is left to a later BFS step."""
        lam = self._frame_lam()
        vx, vy = vtx
        dxd, dyd = quad
        a = (vx, vy)
        b = (vx + lam * dxd, vy + lam * dyd)
        if self._connected_to(f_s, dst):
            self.trace.append(f"stage2.case2.2.1 src={src.base} dst={dst.base} "
                              f"flank={f_s.base} skip=same-component")
            return

        def key(qp):
            c = cross_of_line(a, b, qp.pos)
            return (_SqKey(c * c), qp.index)

        q = find_unblocked_point(f_s.points, (a, b), self.tree, key,
                                 "case-2.2(1) flank point")
        edge = self._attach(q, dst)
        self.trace.append(f"stage2.case2.2.1 src={src.base} dst={dst.base} "
                          f"flank={f_s.base} q={q.index} edge={edge}")

    def _case_222(self, src, dst, f_d, p, vtx, quad, fs_quad, horizontal, root):
        """Intruders in the flank beside the target: wire the flank to src via
        q if needed, then dst to the flank via the bottommost triangle point z."""
        lam = self._frame_lam()
        vx, vy = vtx
        dxd, dyd = quad
        new_edges = []
        if not self._in_root(f_d, root):
            a = (vx, vy)
            b = (vx + lam * fs_quad[0], vy + lam * fs_quad[1])

            def key(qp):
                c = cross_of_line(a, b, qp.pos)
                return (_SqKey(c * c), qp.index)

            q = find_unblocked_point(src.points, (a, b), self.tree, key,
                                     "case-2.2(2) source point")
            edge = self._attach(q, f_d)
            new_edges.append(edge)
            self.trace.append(f"stage2.case2.2.2q src={src.base} "
                              f"flank={f_d.base} q={q.index} edge={edge}")
        if not self._connected_to(dst, f_d):
            if horizontal:
                a_far = (vx + lam * (3 * dxd), vy)
            else:
                a_far = (vx, vy + lam * (3 * dyd))
            v = (vx, vy)
            tri_pts = [z for z in f_d.points
                       if point_in_triangle(z.pos, p.pos, v, a_far) in
                       (INSIDE, ON_BOUNDARY)]
            if not tri_pts:
                raise CaseInvariantViolation(
                    f"triangle p-v-a holds no point of flank {f_d.base}")
            for w in src.points:
                if w.index != p.index and point_in_triangle(
                        w.pos, p.pos, v, a_far) == INSIDE:
                    raise CaseInvariantViolation(
                        f"triangle p-v-a contains source point {w.index}")

            def zkey(zp):
                c = cross_of_line(v, a_far, zp.pos)
                return (_SqKey(c * c), zp.index)

            z = find_unblocked_point(tri_pts, (v, a_far), self.tree, zkey,
                                     "case-2.2(2) z point")
            edge = self._attach(z, dst)
            new_edges.append(edge)
            self.trace.append(f"stage2.case2.2.2z src={src.base} dst={dst.base} "
                              f"flank={f_d.base} z={z.index} edge={edge}")
        if len(new_edges) == 2:
            segs = [(self.inst.points[a].pos, self.inst.points[b].pos)
                    for a, b in new_edges]
            if segments_properly_cross(*segs[0], *segs[1]):
                raise InvariantViolation("case 2.2(2) edges cross each other")

    # -- BFS driver --------------------------------------------------------

    def stitch_all(self):
        cells = self.cx.final_cells
        if not cells:
            raise InvariantViolation("no final cells to stitch")
        root = cells[0]
        connected_count = 0
        while True:
            seen = set()
            queue = deque(fc.id for fc in cells if self._in_root(fc, root))
            seen.update(queue)
            while queue:
                cid = queue.popleft()
                src = cells[cid]
                for nid in self.adj[cid]:
                    dst = cells[nid]
                    if not self._in_root(dst, root):
                        self._dispatch(src, dst, root)
                    if self._in_root(dst, root) and nid not in seen:
                        seen.add(nid)
                        queue.append(nid)
            now = sum(1 for fc in cells if self._in_root(fc, root))
            if now == len(cells):
                return self.tree
            if now == connected_count:
                raise ForestRemains(
                    f"{len(cells) - now} cell trees unreachable after a full pass")
            connected_count = now

    def _dispatch(self, src, dst, root):
        di = dst.base[0] - src.base[0]
        dj = dst.base[1] - src.base[1]
        if abs(di) + abs(dj) == 1:
            self.connect_s_adjacent(src, dst, root)
        else:
            self.connect_d_adjacent(src, dst)


class _SqKey:
    """Orders exact scalars (ints or QuadExpr) inside sort keys."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return sign(self.v - other.v) < 0

    def __eq__(self, other):
        return sign(self.v - other.v) == 0


def stitch_all(inst, cx, star_trees, lam_sq, trace=None):
    return Stitcher(inst, cx, star_trees, lam_sq, trace).stitch_all()
