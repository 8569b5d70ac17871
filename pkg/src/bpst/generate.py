"""Seeded instance generators.

All randomness comes from splitmix64, a 64-bit generator defined by the
recurrence

    state += 0x9E3779B97F4A7C15
    z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
    z = (z ^ z>>27) * 0x94D049BB133111EB
    output = z ^ z>>31            (all mod 2^64)

so identical specs reproduce byte-identical instances on any platform.
Coordinates are quantized to the 6-decimal grid the file format carries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateSpec
from .instance import BLUE, RED, SCALE, ColoredPoint, Instance

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def below(self, bound):
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK - (_MASK + 1) % bound
        while True:
            v = self.next_u64()
            if v <= limit:
                return v % bound


FAMILIES = ("uniform", "clusters", "chain", "checker", "gridstress")


@dataclass
class GenSpec:
    family: str
    n: int
    seed: int
    clusters: int = 0          # clusters family: number of clusters
    spread: float = 1.0        # clusters family: cluster half-width (units)
    spacing: str = "1"         # chain family: gap between consecutive points
    pattern: str = "random"    # color pattern for uniform/checker


def generate(spec: GenSpec) -> Instance:
    if spec.family not in FAMILIES:
        raise DegenerateSpec(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise DegenerateSpec("n must be at least 1")
    if spec.family == "uniform":
        return _uniform(spec)
    if spec.family == "clusters":
        return _clusters(spec)
    if spec.family == "chain":
        return _chain(spec)
    if spec.family == "checker":
        return _checker(spec)
    return _gridstress(spec)


def _force_both_colors(colors):
    if len(colors) >= 2 and len(set(colors)) == 1:
        colors[-1] = BLUE if colors[0] == RED else RED
    return colors


def _fresh_positions(rng, n, span_scaled):
    """n distinct scaled positions inside a span x span box."""
    seen = set()
    out = []
    attempts = 0
    while len(out) < n:
        pos = (rng.below(span_scaled), rng.below(span_scaled))
        attempts += 1
        if attempts > 100 * n + 1000:
            raise DegenerateSpec("could not place distinct points")
        if pos in seen:
            continue
        seen.add(pos)
        out.append(pos)
    return out


def _uniform(spec):
    rng = SplitMix64(spec.seed)
    side = max(2, int(spec.n ** 0.5) * 2)
    pts = _fresh_positions(rng, spec.n, side * SCALE)
    colors = [RED if rng.below(2) == 0 else BLUE for _ in pts]
    _force_both_colors(colors)
    return Instance([ColoredPoint(x, y, c, i)
                     for i, ((x, y), c) in enumerate(zip(pts, colors))])


def _clusters(spec):
    rng = SplitMix64(spec.seed)
    k = spec.clusters or max(2, spec.n // 8)
    side = max(4, int(spec.n ** 0.5) * 3)
    centers = _fresh_positions(rng, k, side * SCALE)
    spread = max(1, int(spec.spread * SCALE))
    seen = set()
    pts = []
    attempts = 0
    while len(pts) < spec.n:
        cx, cy = centers[rng.below(k)]
        pos = (cx + rng.below(2 * spread) - spread,
               cy + rng.below(2 * spread) - spread)
        attempts += 1
        if attempts > 100 * spec.n + 1000:
            raise DegenerateSpec("could not place distinct points")
        if pos in seen:
            continue
        seen.add(pos)
        pts.append(pos)
    colors = [RED if rng.below(2) == 0 else BLUE for _ in pts]
    _force_both_colors(colors)
    return Instance([ColoredPoint(x, y, c, i)
                     for i, ((x, y), c) in enumerate(zip(pts, colors))])


def _chain(spec):
    from .instance import parse_coordinate
    gap = parse_coordinate(spec.spacing)
    if gap <= 0:
        raise DegenerateSpec("chain spacing must be positive")
    pts = []
    for i in range(spec.n):
        color = RED if i % 2 == 0 else BLUE
        pts.append(ColoredPoint(i * gap, 0, color, i))
    if spec.n >= 2:
        pass  # alternating colors already guarantee both
    return Instance(pts)


def _checker(spec):
    rng = SplitMix64(spec.seed)
    cols = max(2, int(spec.n ** 0.5))
    jitter = SCALE // 3
    seen = set()
    pts = []
    colors = []
    idx = 0
    while len(pts) < spec.n:
        ix, iy = idx % cols, idx // cols
        idx += 1
        pos = (2 * ix * SCALE + rng.below(2 * jitter),
               2 * iy * SCALE + rng.below(2 * jitter))
        if pos in seen:
            continue
        seen.add(pos)
        pts.append(pos)
        colors.append(RED if (ix + iy) % 2 == 0 else BLUE)
    _force_both_colors(colors)
    return Instance([ColoredPoint(x, y, c, i)
                     for i, ((x, y), c) in enumerate(zip(pts, colors))])


# -- gridstress: planted layouts driving every Stage-1 step and Stage-2 case --

def _pt(acc, x, y, color):
    """Append a point given float-ish unit coordinates (quantized exactly)."""
    acc.append((round(x * SCALE), round(y * SCALE), color))


def _chain_web(acc, x0, y0, x1, y1, first_color):
    """Alternating chain from (x0,y0) to (x1,y1) with every link below 1."""
    import math
    dx, dy = x1 - x0, y1 - y0
    length = math.hypot(dx, dy)
    steps = max(1, int(math.ceil(length / 0.85)))
    color = first_color
    for k in range(steps + 1):
        _pt(acc, x0 + dx * k / steps, y0 + dy * k / steps, color)
        color = BLUE if color == RED else RED
    return color


def _gridstress(spec):
    builders = (_gs_case21, _gs_case1, _gs_case221, _gs_case222,
                _gs_steps_a, _gs_steps_b)
    raw = builders[spec.seed % len(builders)]()
    seen = set()
    pts = []
    for (x, y, c) in raw:
        if (x, y) in seen:
            continue
        seen.add((x, y))
        pts.append(ColoredPoint(x, y, c, len(pts)))
    return Instance(pts)


def _anchor(acc):
    """Pin lambda = 1: a blue whose only unit-range partner is one red at
    exactly distance 1; the red joins the rest of the web with short links."""
    _pt(acc, 0.0, 0.5, BLUE)
    _pt(acc, 0.0, 1.5, RED)


def _gs_case21(acc=None):
    """Two side-by-side bichromatic cells, nothing between: Case 2.1."""
    acc = []
    _anchor(acc)
    # grid lines at -1/7 + 3k; cells roughly [-0.14, 2.86), [2.86, 5.71), ...
    _chain_web(acc, 0.0, 1.5, 1.5, 1.5, BLUE)
    _pt(acc, 1.8, 1.2, RED)
    _pt(acc, 2.2, 1.6, BLUE)
    _chain_web(acc, 2.2, 1.6, 3.3, 1.4, RED)
    _pt(acc, 3.6, 1.1, RED)
    _pt(acc, 4.0, 1.7, BLUE)
    return acc


def _gs_case1(acc=None):
    """Diagonal bichromatic pair with the two intervening cells partitioned."""
    acc = []
    _anchor(acc)
    # cells: A row at y in (2.86, 5.71), upper-right cell x in (2.86, 5.71),
    # y in (5.71, 8.57); the web climbs through the shared corner region.
    _chain_web(acc, 0.0, 1.5, 1.2, 3.6, BLUE)
    _pt(acc, 1.6, 4.0, RED)
    _pt(acc, 2.0, 4.4, BLUE)
    # mono cells on the two intervening sides, points hugging the corner
    _chain_web(acc, 2.0, 4.4, 2.6, 5.1, RED)
    _pt(acc, 3.1, 5.5, RED)      # right-of-A cell, near corner (mono red)
    _pt(acc, 2.6, 6.0, BLUE)     # above-A cell, near corner (mono blue)
    _pt(acc, 3.2, 6.3, RED)      # diagonal cell
    _pt(acc, 3.7, 6.7, BLUE)
    return acc


def _gs_case221(acc=None):
    """Figure-15(a) style: hull of (dst + p) grabs a point of the flank
    beside the source; the flank over the target is partitioned mono."""
    acc = []
    _anchor(acc)
    _chain_web(acc, 0.0, 1.5, 1.0, 1.5, BLUE)
    # src cell (row with y in (-0.14, 2.86), col x in (-0.14, 2.86))
    _pt(acc, 1.5, 1.8, RED)
    _pt(acc, 1.9, 2.2, BLUE)
    # dst cell to the right
    _pt(acc, 3.4, 2.0, BLUE)
    _pt(acc, 3.9, 2.4, RED)
    _chain_web(acc, 1.9, 2.2, 3.4, 2.0, RED)
    # flank above the source: bichromatic, with one point dipping low
    _pt(acc, 2.4, 3.1, RED)
    _pt(acc, 2.0, 3.5, BLUE)
    _chain_web(acc, 1.9, 2.2, 2.4, 3.1, RED)
    # flank above the target: mono blue, pushed into its bottom trapezoid so
    # partitioning dumps it into the dst cell and the hull bulges upward
    _pt(acc, 3.6, 3.1, BLUE)
    _chain_web(acc, 3.9, 2.4, 3.6, 3.1, BLUE)
    return acc


def _gs_case222(acc=None):
    """Figure-15(b) style: the flank above the target is extended and owns a
    hull intruder; the flank above the source is partitioned mono."""
    acc = []
    _anchor(acc)
    _chain_web(acc, 0.0, 1.5, 1.0, 1.5, BLUE)
    _pt(acc, 1.5, 1.8, RED)
    _pt(acc, 2.0, 2.3, BLUE)
    _pt(acc, 3.4, 2.0, BLUE)
    _pt(acc, 3.9, 2.4, RED)
    _chain_web(acc, 2.0, 2.3, 3.4, 2.0, RED)
    # flank above the source: mono red in its bottom trapezoid
    _pt(acc, 2.2, 3.1, RED)
    _chain_web(acc, 2.0, 2.3, 2.2, 3.1, RED)
    # flank above the target: bichromatic with a point near the corner
    _pt(acc, 3.2, 3.3, BLUE)
    _pt(acc, 3.8, 3.6, RED)
    _chain_web(acc, 3.9, 2.4, 3.8, 3.6, BLUE)
    return acc


def _gs_steps_a(acc=None):
    """Mono chains firing Step 1 (a source mono cell) and Step 3."""
    acc = []
    _anchor(acc)
    _chain_web(acc, 0.0, 1.5, 1.5, 1.5, BLUE)
    _pt(acc, 2.0, 1.3, RED)
    _pt(acc, 2.4, 1.7, BLUE)
    # mono red cell to the right whose left trapezoid is occupied
    _pt(acc, 3.1, 1.5, RED)
    _chain_web(acc, 2.4, 1.7, 3.1, 1.5, RED)
    return acc


def _gs_steps_b(acc=None):
    """Mutually facing mono cells so Step 2's chessboard rule fires."""
    acc = []
    _anchor(acc)
    _chain_web(acc, 0.0, 1.5, 1.5, 1.5, BLUE)
    _pt(acc, 2.1, 1.4, RED)
    _pt(acc, 2.5, 1.8, BLUE)
    # facing mono cells across the x = 2.857 grid line
    _pt(acc, 2.7, 1.2, RED)      # right trapezoid of the left cell
    _pt(acc, 3.0, 1.6, BLUE)     # left trapezoid of the right cell
    _pt(acc, 3.4, 1.3, BLUE)
    _chain_web(acc, 2.5, 1.8, 3.0, 1.6, RED)
    return acc
