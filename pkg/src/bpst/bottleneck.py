"""Lower bound lambda: bottleneck of the best (possibly crossing) bichromatic tree.

lambda is realized by a red-blue pair distance, so we sort all candidate
squared distances and find the first prefix whose bipartite threshold graph
connects the whole point set.  That threshold is exact (an integer in scaled
units) and is a valid lower bound for any bichromatic spanning tree, planar
or not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInstance, MonochromaticInstance
from .geometry import dist_sq
from .instance import RED, Instance


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.count = n

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.count -= 1
        return True


@dataclass
class BottleneckResult:
    lambda_sq: int                 # exact, scaled units squared
    witness_edges: list            # (i, j) index pairs, red-blue, spanning


def _check_bichromatic(inst: Instance):
    if inst.n >= 2:
        reds = inst.reds()
        if not reds or len(reds) == inst.n:
            raise MonochromaticInstance("both colors required for n >= 2")


def bichromatic_pairs(inst: Instance):
    """All (d_sq, red_index, blue_index) pairs, unsorted."""
    reds = inst.reds()
    blues = inst.blues()
    out = []
    for r in reds:
        rx, ry = r.x, r.y
        ri = r.index
        for b in blues:
            dx = rx - b.x
            dy = ry - b.y
            out.append((dx * dx + dy * dy, ri, b.index))
    return out


def bichromatic_candidate_distances(inst: Instance):
    """Sorted, deduplicated squared red-blue distances."""
    _check_bichromatic(inst)
    return sorted({d for d, _, _ in bichromatic_pairs(inst)})


def connected_under_threshold(inst: Instance, d_sq):
    """Is the bipartite graph with red-blue edges of squared length <= d_sq connected?"""
    if inst.n == 1:
        return True
    uf = UnionFind(inst.n)
    for d, i, j in bichromatic_pairs(inst):
        if d <= d_sq:
            uf.union(i, j)
            if uf.count == 1:
                return True
    return uf.count == 1


def compute_lambda(inst: Instance) -> BottleneckResult:
    """Minimum connecting threshold plus a witness spanning tree of that graph."""
    if inst.n == 1:
        return BottleneckResult(0, [])
    _check_bichromatic(inst)
    pairs = sorted(bichromatic_pairs(inst))
    uf = UnionFind(inst.n)
    lam_sq = None
    for d, i, j in pairs:
        if uf.union(i, j):
            if uf.count == 1:
                lam_sq = d
                break
    if lam_sq is None:
        # bipartite graph cannot connect the points at any threshold
        raise MonochromaticInstance("threshold graph never becomes connected")
    if lam_sq == 0:
        raise DegenerateInstance("coincident positions produced lambda = 0")
    # witness: BFS-style forest over edges within the threshold
    uf2 = UnionFind(inst.n)
    witness = []
    for d, i, j in pairs:
        if d > lam_sq:
            break
        if uf2.union(i, j):
            witness.append((i, j))
            if uf2.count == 1:
                break
    assert len(witness) == inst.n - 1
    assert max(dist_sq(inst.points[i].pos, inst.points[j].pos)
               for i, j in witness) == lam_sq
    return BottleneckResult(lam_sq, witness)
