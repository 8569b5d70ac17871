"""End-to-end solve: lambda, Stage 1, Stage 2, verification."""

from __future__ import annotations

from dataclasses import dataclass

from .bottleneck import BottleneckResult, compute_lambda
from .errors import InvariantViolation
from .grid import run_stage1
from .instance import Instance
from .startree import build_star_tree
from .stitch import stitch_all
from .verify import TreeReport, verify_tree


@dataclass
class SolveResult:
    inst: Instance
    bottleneck: BottleneckResult
    cell_complex: object          # None for n = 1
    star_trees: dict
    edges: list
    report: TreeReport
    trace: list

    @property
    def lambda_sq(self):
        return self.bottleneck.lambda_sq

    @property
    def ratio_ok(self):
        # bottleneck(T')^2 <= (8*sqrt(2)*lambda)^2, compared exactly
        return self.report.bottleneck_sq <= 128 * self.bottleneck.lambda_sq


def solve(inst: Instance, offset_seed: int = 0, trace=None) -> SolveResult:
    trace = trace if trace is not None else []
    if inst.n == 1:
        report = verify_tree(inst, [])
        return SolveResult(inst, BottleneckResult(0, []), None, {}, [], report, trace)
    bn = compute_lambda(inst)
    cx = run_stage1(inst, bn.lambda_sq, offset_seed, trace)
    star_trees = {fc.id: build_star_tree(fc) for fc in cx.final_cells}
    tree = stitch_all(inst, cx, star_trees, bn.lambda_sq, trace)
    report = verify_tree(inst, tree.edges)
    if not report.all_ok:
        raise InvariantViolation(
            f"verifier rejected the constructed tree: spanning={report.is_spanning} "
            f"bichromatic={report.is_bichromatic} planar={report.is_planar}")
    if report.bottleneck_sq > 128 * bn.lambda_sq:
        raise InvariantViolation("bottleneck exceeds 8*sqrt(2)*lambda")
    return SolveResult(inst, bn, cx, star_trees, tree.edges, report, trace)
