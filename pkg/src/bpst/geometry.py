"""Exact 2-D primitives: orientation, segment crossing, hulls, containment.

Points are (x, y) pairs whose coordinates are integers, Fractions or
QuadExpr values; every predicate is computed exactly, never with floats.
Mixed coordinate types are fine as long as QuadExpr values share one field.
"""

from __future__ import annotations

from .numbers import sign

LEFT = 1
RIGHT = -1
COLLINEAR = 0

INSIDE = 1
ON_BOUNDARY = 0
OUTSIDE = -1


def orientation(a, b, c):
    """Sign of the cross product (b - a) x (c - a): LEFT, RIGHT or COLLINEAR."""
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def dist_sq(a, b):
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def _collinear_overlap_positive(p1, p2, q1, q2):
    # All four points collinear; do the segments overlap on positive length?
    if p1[0] != p2[0]:
        key = 0
    else:
        key = 1
    lo1, hi1 = sorted((p1[key], p2[key]))
    lo2, hi2 = sorted((q1[key], q2[key]))
    lo = lo1 if lo1 > lo2 else lo2
    hi = hi1 if hi1 < hi2 else hi2
    return sign(hi - lo) > 0


def segments_properly_cross(p1, p2, q1, q2):
    """True iff the closed segments share a point interior to both.

    Segments meeting only at an endpoint do not cross; collinear segments
    overlapping on positive length do (they cannot be drawn without
    intersection).
    """
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        return _collinear_overlap_positive(p1, p2, q1, q2)
    return False


def convex_hull(points):
    """Counterclockwise hull via monotone chain; collinear boundary points dropped.

    Returns the hull vertex list starting from the lexicographically smallest
    vertex, so equal point sets give identical output regardless of input
    order.  Fewer than 3 returned vertices means the input is degenerate
    (a point or a segment).
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # every input point collinear
        return [pts[0], pts[-1]]
    return hull


def point_in_convex_polygon(p, poly):
    """Classify p against a CCW convex polygon: INSIDE, ON_BOUNDARY or OUTSIDE."""
    n = len(poly)
    if n == 0:
        return OUTSIDE
    if n == 1:
        return ON_BOUNDARY if (sign(p[0] - poly[0][0]) == 0 and sign(p[1] - poly[0][1]) == 0) else OUTSIDE
    if n == 2:
        if orientation(poly[0], poly[1], p) != 0:
            return OUTSIDE
        return ON_BOUNDARY if _between_collinear(poly[0], poly[1], p) else OUTSIDE
    on_edge = False
    for k in range(n):
        a = poly[k]
        b = poly[(k + 1) % n]
        o = orientation(a, b, p)
        if o < 0:
            return OUTSIDE
        if o == 0 and _between_collinear(a, b, p):
            on_edge = True
    return ON_BOUNDARY if on_edge else INSIDE


def _between_collinear(a, b, p):
    # p already collinear with a, b; is it on the closed segment?
    return (sign(min(a[0], b[0]) - p[0]) <= 0 <= sign(max(a[0], b[0]) - p[0])
            and sign(min(a[1], b[1]) - p[1]) <= 0 <= sign(max(a[1], b[1]) - p[1]))


def point_on_segment(p, a, b):
    """p lies on the closed segment ab."""
    return orientation(a, b, p) == 0 and _between_collinear(a, b, p)


def point_in_triangle(p, a, b, c):
    """Classify p against triangle abc (any vertex order): INSIDE/ON_BOUNDARY/OUTSIDE."""
    if orientation(a, b, c) < 0:
        a, c = c, a
    return point_in_convex_polygon(p, [a, b, c])


def segment_crosses_triangle(s1, s2, a, b, c):
    """True iff segment (s1,s2) properly crosses the triangle abc.

    "Properly crosses" means the segment has points strictly inside the
    triangle, or it properly crosses one of the triangle's edges; segments
    that only touch the boundary (shared endpoint, grazing contact) do not
    count.  Degenerate (collinear) triangles reduce to segment crossing.
    """
    if orientation(a, b, c) == 0:
        return segments_properly_cross(s1, s2, a, c)
    for (u, v) in ((a, b), (b, c), (c, a)):
        if segments_properly_cross(s1, s2, u, v):
            return True
    # Segment entirely inside (or touching boundary from inside): strictly
    # interior endpoints mean the open segment meets the open triangle.
    tri = [a, b, c] if orientation(a, b, c) > 0 else [a, c, b]
    if point_in_convex_polygon(s1, tri) == INSIDE or point_in_convex_polygon(s2, tri) == INSIDE:
        return True
    return False


def cross_of_line(a, b, p):
    """Cross product (b - a) x (p - a); proportional to signed distance of p from line ab."""
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])


def line_distance_sq_cmp(a, b, p, q):
    """Compare distances of p and q from line ab: -1 if p closer, 0 equal, 1 farther."""
    cp = cross_of_line(a, b, p)
    cq = cross_of_line(a, b, q)
    return sign(cp * cp - cq * cq)
