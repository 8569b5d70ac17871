"""Stage 2.1: planar bichromatic star-based tree inside one cell.

The tree has a red center joined to every blue point; the star's rays split
the plane into angular sectors whose interiors contain only red points, and
every such red attaches to one blue on its sector's bounding ray.  Sectors
of angle > pi are split so each sector is convex, which is what makes both
the in-cell construction and the external attachment lemma crossing-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .errors import AttachFailure, InvariantViolation
from .geometry import dist_sq, segments_properly_cross
from .instance import BLUE, RED
from .numbers import int_sign


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _half(d):
    """0 for angles in [0, pi), 1 for [pi, 2*pi); direction (0,0) is invalid."""
    if d[1] > 0 or (d[1] == 0 and d[0] > 0):
        return 0
    return 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _cross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _same_ray(a, b):
    return _cross(a, b) == 0 and _dot(a, b) > 0


def _in_half_open_sector(ds, de, d):
    """Is direction d inside the CCW sector [ds, de)?  Sector width <= pi."""
    if _same_ray(d, ds):
        return True
    if _same_ray(d, de):
        return False
    cde = _cross(ds, de)
    cd1 = _cross(ds, d)
    cd2 = _cross(d, de)
    if cde > 0:
        return cd1 > 0 and cd2 > 0
    if cde == 0:
        # ds and de opposite: the sector is the open half-plane left of ds
        return cd1 > 0
    # reflex sector: complement of the closed CCW wedge [de, ds]
    return not (cd2 >= 0 and _cross(de, d) >= 0)


@dataclass
class Cone:
    """Angular sector at the star center; all interior points are red."""
    start_dir: tuple
    end_dir: tuple
    attach_blue: object            # ColoredPoint all member reds connect to
    other_blue: object = None      # blue on the opposite bounding ray, if any
    member_reds: list = field(default_factory=list)
    whole_plane: bool = False

    def contains(self, d):
        if self.whole_plane:
            return True
        return _in_half_open_sector(self.start_dir, self.end_dir, d)


@dataclass
class StarTree:
    cell_id: int
    center: object                 # ColoredPoint, red
    points: list                   # all cell points
    edges: list                    # (index, index)
    cones: list
    by_index: dict

    def segments(self):
        return [(self.by_index[a].pos, self.by_index[b].pos) for a, b in self.edges]


def _norm_dir(dx, dy):
    from math import gcd
    g = gcd(abs(dx), abs(dy))
    return (dx // g, dy // g)


def build_star_tree(cell) -> StarTree:
    """Star tree of one final cell; verified planar before returning.

    Points sharing one exact ray from the center form a chain: the colors
    along the ray must alternate (collinear instances such as unit chains
    satisfy this) and the ray carries a path instead of overlapping spokes.
    """
    pts = cell.points
    reds = [p for p in pts if p.color == RED]
    blues = [p for p in pts if p.color == BLUE]
    if not reds or not blues:
        raise InvariantViolation(f"cell {cell.base} is not bichromatic")
    center = min(reds, key=lambda p: p.index)
    groups = {}
    for p in pts:
        if p is center:
            continue
        d = _norm_dir(p.x - center.x, p.y - center.y)
        groups.setdefault(d, []).append(p)
    edges = []
    spoke_rays = []
    free_reds = []
    for d in sorted(groups, key=lambda v: (v[0], v[1])):
        group = sorted(groups[d],
                       key=lambda p: (dist_sq(p.pos, center.pos), p.index))
        if all(p.color == RED for p in group):
            free_reds.extend(group)
            continue
        prev = center
        for p in group:
            if p.color == prev.color:
                raise InvariantViolation(
                    f"points {prev.index} and {p.index} break color alternation "
                    f"on a ray from the star center (degenerate input)")
            edges.append((prev.index, p.index))
            prev = p
        spoke_rays.append((d, group))
    cones = _build_cones(spoke_rays)
    for r in free_reds:
        d = (r.x - center.x, r.y - center.y)
        cone = _locate_cone(cones, d)
        cone.member_reds.append(r)
        edges.append((r.index, cone.attach_blue.index))
    by_index = {p.index: p for p in pts}
    tree = StarTree(cell.id, center, pts, edges, cones, by_index)
    _verify_star(tree, cell)
    return tree


def _build_cones(spoke_rays):
    # each spoke ray starts with its nearest point, which alternation makes blue
    if len(spoke_rays) == 1:
        d, group = spoke_rays[0]
        return [Cone(d, d, group[0], None, whole_plane=True)]
    rays = sorted(spoke_rays, key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
    cones = []
    m = len(rays)
    for k in range(m):
        ds, g_start = rays[k]
        de, g_end = rays[(k + 1) % m]
        b_start, b_end = g_start[0], g_end[0]
        reflex = _cross(ds, de) < 0
        if reflex:
            # split at the ray opposite the start so both parts are convex
            split = (-ds[0], -ds[1])
            cones.append(Cone(ds, split, b_start, b_end))
            cones.append(Cone(split, de, b_end, b_start))
        else:
            cones.append(Cone(ds, de, b_start, b_end))
    return cones


def _locate_cone(cones, d):
    if d == (0, 0):
        raise InvariantViolation("zero direction while locating a cone")
    for cone in cones:
        if cone.contains(d):
            return cone
    raise InvariantViolation("direction not covered by any cone")


def _verify_star(tree: StarTree, cell):
    n = len(tree.points)
    if len(tree.edges) != n - 1:
        raise InvariantViolation(
            f"star tree of cell {cell.base} has {len(tree.edges)} edges for {n} points")
    parent = {p.index: p.index for p in tree.points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in tree.edges:
        pa, pb = tree.by_index[a], tree.by_index[b]
        if pa.color == pb.color:
            raise InvariantViolation("monochromatic star edge")
        parent[find(a)] = find(b)
    if len({find(p.index) for p in tree.points}) != 1:
        raise InvariantViolation(f"star tree of cell {cell.base} is disconnected")
    segs = tree.segments()
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if segments_properly_cross(*segs[i], *segs[j]):
                raise InvariantViolation(
                    f"star tree of cell {cell.base} has crossing edges "
                    f"{tree.edges[i]} and {tree.edges[j]}")


def _crossing_parameter(p, s, a, b):
    """Parameter t in (0,1) where segment p->s crosses line ab (assumes proper cross)."""
    d = (s[0] - p[0], s[1] - p[1])
    e = (b[0] - a[0], b[1] - a[1])
    denom = _cross(d, e)
    if denom == 0:
        # collinear overlap; treat as blocking immediately at p
        return Fraction(0)
    num = _cross((a[0] - p[0], a[1] - p[1]), e)
    return Fraction(num, denom)


def attach_external_point(tree: StarTree, p, forbidden=()):
    """One bichromatic edge joining outside point p to the tree, crossing
    neither the tree's edges nor any forbidden segment.

    Blue p tries the center first, then the opposite-color endpoints of the
    tree edges crossing segment (p, center), nearest crossing first.  Red p
    tries its cone's attach blue, then the other bounding blue.
    """
    s = tree.center
    if p.color == BLUE:
        candidates = [s]
        crossings = []
        for (a, b) in tree.edges:
            pa, pb = tree.by_index[a], tree.by_index[b]
            if segments_properly_cross(p.pos, s.pos, pa.pos, pb.pos):
                t = _crossing_parameter(p.pos, s.pos, pa.pos, pb.pos)
                red = pa if pa.color == RED else pb
                crossings.append((t, red.index, red))
        crossings.sort(key=lambda c: (c[0], c[1]))
        candidates.extend(c[2] for c in crossings)
    else:
        d = (p.x - s.x, p.y - s.y)
        cone = _locate_cone(tree.cones, d)
        candidates = [cone.attach_blue]
        if cone.other_blue is not None:
            candidates.append(cone.other_blue)
    segs = tree.segments()
    for cand in candidates:
        if cand.index == p.index:
            continue
        seg = (p.pos, cand.pos)
        if any(segments_properly_cross(*seg, *t) for t in segs):
            continue
        if any(segments_properly_cross(*seg, *f) for f in forbidden):
            continue
        return (p.index, cand.index)
    raise AttachFailure(
        f"no crossing-free attachment for point {p.index} to cell {tree.cell_id}")
