"""Point and result file formats.

Point file (header `bpst v1`, one point per line):

    bpst v1
    0.500000 1.250000 R
    2.000000 1.000000 B

Result file (header `bpst-result v1`, key/value lines then the edge list).
All lengths are serialized as exact squared decimals plus a float display
value; coordinates are always decimal strings, never binary floats.
"""

from __future__ import annotations

import math

from .errors import ParseError
from .instance import (BLUE, RED, ColoredPoint, Instance, format_coordinate,
                       format_sq, parse_coordinate)

POINT_HEADER = "bpst v1"
RESULT_HEADER = "bpst-result v1"


def read_instance_text(text) -> Instance:
    lines = text.splitlines()
    if not lines or lines[0].strip() != POINT_HEADER:
        raise ParseError(f"line 1: expected header {POINT_HEADER!r}")
    pts = []
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {ln}: expected 'x y color', got {raw!r}")
        x, y, color = parts
        if color not in (RED, BLUE):
            raise ParseError(f"line {ln}: color must be R or B, got {color!r}")
        try:
            px, py = parse_coordinate(x), parse_coordinate(y)
        except ParseError as e:
            raise ParseError(f"line {ln}: {e}") from None
        pts.append(ColoredPoint(px, py, color, len(pts)))
    return Instance(pts)


def read_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return read_instance_text(fh.read())


def write_instance_text(inst: Instance) -> str:
    lines = [POINT_HEADER]
    for p in inst.points:
        lines.append(f"{format_coordinate(p.x)} {format_coordinate(p.y)} {p.color}")
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_instance_text(inst))


def _sqrt_display(sq_scaled):
    from .instance import SCALE
    return f"{math.sqrt(sq_scaled) / SCALE:.9g}"


def result_text(result) -> str:
    """Serialize a SolveResult."""
    r = result.report
    lines = [
        RESULT_HEADER,
        f"n {result.inst.n}",
        f"lambda_sq {format_sq(result.lambda_sq)}",
        f"lambda {_sqrt_display(result.lambda_sq)}",
        f"bottleneck_sq {format_sq(r.bottleneck_sq)}",
        f"bottleneck {_sqrt_display(r.bottleneck_sq)}",
        f"ratio_ok {'true' if result.ratio_ok else 'false'}",
        f"spanning {'true' if r.is_spanning else 'false'}",
        f"bichromatic {'true' if r.is_bichromatic else 'false'}",
        f"planar {'true' if r.is_planar else 'false'}",
        f"components {r.component_count}",
        f"edges {len(result.edges)}",
    ]
    for a, b in result.edges:
        lines.append(f"e {a} {b}")
    return "\n".join(lines) + "\n"


def exact_result_text(inst, exact) -> str:
    lines = [
        RESULT_HEADER,
        f"n {inst.n}",
        f"opt_sq {format_sq(exact.opt_sq)}",
        f"opt {_sqrt_display(exact.opt_sq)}",
        f"edges {len(exact.witness_tree)}",
    ]
    for a, b in exact.witness_tree:
        lines.append(f"e {a} {b}")
    return "\n".join(lines) + "\n"


def parse_result_text(text) -> dict:
    """Result file -> dict (values kept as strings, edges as int pairs)."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != RESULT_HEADER:
        raise ParseError(f"line 1: expected header {RESULT_HEADER!r}")
    out = {"edges": []}
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "e":
            if len(parts) != 3:
                raise ParseError(f"line {ln}: bad edge line {raw!r}")
            out["edges"].append((int(parts[1]), int(parts[2])))
        elif len(parts) == 2:
            out[parts[0]] = parts[1]
        else:
            raise ParseError(f"line {ln}: bad line {raw!r}")
    return out
