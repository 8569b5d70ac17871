"""Independent tree checking and an exact bottleneck solver for small inputs.

verify_tree is written straight from the problem definition and shares
nothing with the construction besides the geometric predicates, so it can
serve as the certificate checker for the pipeline's output.  The exact
solver backtracks over length-sorted candidate edges and is the ground
truth the approximation ratio is measured against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Infeasible, InstanceTooLarge
from .geometry import dist_sq, segments_properly_cross
from .instance import Instance

EXACT_DEFAULT_BOUND = 10
EXACT_HARD_BOUND = 12


@dataclass
class TreeReport:
    is_spanning: bool
    is_bichromatic: bool
    is_planar: bool
    bottleneck_sq: int
    crossing_witness: tuple | None
    component_count: int

    @property
    def all_ok(self):
        return self.is_spanning and self.is_bichromatic and self.is_planar


def verify_tree(inst: Instance, edges) -> TreeReport:
    """Check spanning / bichromatic / planar and measure the bottleneck."""
    n = inst.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    bichromatic = True
    bottleneck_sq = 0
    segs = []
    for a, b in edges:
        pa, pb = inst.points[a], inst.points[b]
        if pa.color == pb.color:
            bichromatic = False
        d = dist_sq(pa.pos, pb.pos)
        if d > bottleneck_sq:
            bottleneck_sq = d
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            components -= 1
        segs.append((pa.pos, pb.pos))
    spanning = (len(list(edges)) == n - 1 and components == 1)
    witness = None
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if segments_properly_cross(*segs[i], *segs[j]):
                witness = (tuple(edges[i]), tuple(edges[j]))
                break
        if witness:
            break
    return TreeReport(spanning, bichromatic, witness is None,
                      bottleneck_sq, witness, components)


@dataclass
class ExactResult:
    opt_sq: int
    witness_tree: list


def _feasible_tree(inst, edges, n):
    """A planar bichromatic spanning tree using only `edges`, or None.

    Edges are (d_sq, i, j) sorted ascending; subsets are enumerated in index
    order with cycle, crossing, remaining-count and connectivity pruning.
    """
    pts = [p.pos for p in inst.points]
    m = len(edges)

    def connectable(parent_snapshot, start):
        parent = parent_snapshot[:]

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = len({find(v) for v in range(n)})
        for k in range(start, m):
            _, i, j = edges[k]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def grow(start, parent, chosen, segs):
        if len(chosen) == n - 1:
            return list(chosen)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if len(chosen) + (m - start) < n - 1:
            return None
        if not connectable(parent, start):
            return None
        for k in range(start, m):
            _, i, j = edges[k]
            if find(i) == find(j):
                continue
            seg = (pts[i], pts[j])
            if any(segments_properly_cross(*seg, *s) for s in segs):
                continue
            child = parent[:]
            child[find(i)] = find(j)
            res = grow(k + 1, child, chosen + [(i, j)], segs + [seg])
            if res is not None:
                return res
        return None

    return grow(0, list(range(n)), [], [])


def exact_bottleneck_planar_bst(inst: Instance, max_n=EXACT_DEFAULT_BOUND) -> ExactResult:
    """Smallest bottleneck over all planar bichromatic spanning trees.

    Binary search over candidate red-blue distances (feasibility is monotone
    in the threshold); raises InstanceTooLarge beyond max_n and Infeasible
    for degenerate inputs where no such tree exists at all.
    """
    if max_n > EXACT_HARD_BOUND:
        max_n = EXACT_HARD_BOUND
    if inst.n > max_n:
        raise InstanceTooLarge(f"exact solver limited to n <= {max_n}")
    if inst.n == 1:
        return ExactResult(0, [])
    all_pairs = []
    for r in inst.reds():
        for b in inst.blues():
            all_pairs.append((dist_sq(r.pos, b.pos), r.index, b.index))
    all_pairs.sort()
    candidates = sorted({d for d, _, _ in all_pairs})
    lo, hi = 0, len(candidates) - 1
    best = None
    if _solve_at(inst, all_pairs, candidates[hi]) is None:
        raise Infeasible("no planar bichromatic spanning tree exists")
    while lo < hi:
        mid = (lo + hi) // 2
        tree = _solve_at(inst, all_pairs, candidates[mid])
        if tree is not None:
            best = (candidates[mid], tree)
            hi = mid
        else:
            lo = mid + 1
    if best is None or best[0] != candidates[lo]:
        best = (candidates[lo], _solve_at(inst, all_pairs, candidates[lo]))
    return ExactResult(best[0], best[1])


def _solve_at(inst, all_pairs, d_sq):
    usable = [e for e in all_pairs if e[0] <= d_sq]
    return _feasible_tree(inst, usable, inst.n)
