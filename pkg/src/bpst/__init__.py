"""Bottleneck planar bichromatic spanning trees.

Given red and blue points in the plane, build a crossing-free spanning tree
whose every edge joins a red point to a blue point and whose longest edge is
at most 8*sqrt(2) times the shortest possible over all bichromatic spanning
trees, crossing or not.  Includes the grid-partition construction, an
independent verifier, an exact brute-force solver for small inputs, seeded
generators and SVG rendering.
"""

from .bottleneck import (BottleneckResult, bichromatic_candidate_distances,
                         compute_lambda, connected_under_threshold)
from .errors import (AttachFailure, BpstError, CaseInvariantViolation,
                     DegenerateInstance, DegenerateSpec, ForestRemains,
                     Infeasible, InstanceTooLarge, InvariantViolation,
                     MonochromaticInstance, ParseError, SweepExhausted)
from .generate import GenSpec, SplitMix64, generate
from .instance import BLUE, RED, ColoredPoint, Instance
from .pipeline import SolveResult, solve
from .verify import ExactResult, TreeReport, exact_bottleneck_planar_bst, verify_tree

__all__ = [
    "AttachFailure", "BLUE", "BottleneckResult", "BpstError",
    "CaseInvariantViolation", "ColoredPoint", "DegenerateInstance",
    "DegenerateSpec", "ExactResult", "ForestRemains", "GenSpec", "Infeasible",
    "Instance", "InstanceTooLarge", "InvariantViolation",
    "MonochromaticInstance", "ParseError", "RED", "SolveResult", "SplitMix64",
    "SweepExhausted", "TreeReport", "bichromatic_candidate_distances",
    "compute_lambda", "connected_under_threshold",
    "exact_bottleneck_planar_bst", "generate", "solve", "verify_tree",
]

__version__ = "0.1.0"
