"""Colored point sets: parsing, validation, canonical serialization.

Coordinates are decimal strings with at most SCALE_DIGITS fractional digits
and are stored as exact integers scaled by 10**SCALE_DIGITS.  Squared
distances are therefore exact integers throughout the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInstance, MonochromaticInstance, ParseError

RED = "R"
BLUE = "B"

SCALE_DIGITS = 6
SCALE = 10 ** SCALE_DIGITS


def parse_coordinate(text):
    """Exact decimal string -> scaled integer.

    Accepts an optional sign, digits, and at most SCALE_DIGITS fractional
    digits.  No exponents: files must carry plain decimals.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty coordinate")
    neg = s.startswith("-")
    if s[0] in "+-":
        s = s[1:]
    if not s or s.strip("0123456789."):
        raise ParseError(f"bad coordinate {text!r}")
    if s.count(".") > 1:
        raise ParseError(f"bad coordinate {text!r}")
    if "." in s:
        whole, frac = s.split(".")
    else:
        whole, frac = s, ""
    if len(frac) > SCALE_DIGITS:
        raise ParseError(
            f"coordinate {text!r} has more than {SCALE_DIGITS} fractional digits")
    if not (whole or frac):
        raise ParseError(f"bad coordinate {text!r}")
    value = int(whole or "0") * SCALE + int((frac or "0").ljust(SCALE_DIGITS, "0"))
    return -value if neg else value


def format_coordinate(scaled):
    """Scaled integer -> canonical decimal string with SCALE_DIGITS digits."""
    neg = scaled < 0
    scaled = abs(scaled)
    whole, frac = divmod(scaled, SCALE)
    text = f"{whole}.{frac:0{SCALE_DIGITS}d}"
    return "-" + text if neg else text


def format_sq(scaled_sq):
    """Exact squared length (in scaled units) -> decimal string in input units."""
    denom = SCALE * SCALE
    neg = scaled_sq < 0
    scaled_sq = abs(scaled_sq)
    whole, frac = divmod(scaled_sq, denom)
    text = f"{whole}.{frac:0{2 * SCALE_DIGITS}d}".rstrip("0").rstrip(".")
    if not text or text == "-":
        text = "0"
    return "-" + text if neg else text


@dataclass(frozen=True)
class ColoredPoint:
    x: int            # scaled
    y: int            # scaled
    color: str        # RED or BLUE
    index: int

    @property
    def pos(self):
        return (self.x, self.y)


class Instance:
    """A validated red/blue point set."""

    def __init__(self, points):
        points = list(points)
        if not points:
            raise DegenerateInstance("instance has no points")
        seen = {}
        colors = set()
        for p in points:
            if p.color not in (RED, BLUE):
                raise DegenerateInstance(f"point {p.index} has color {p.color!r}")
            if p.pos in seen:
                raise DegenerateInstance(
                    f"points {seen[p.pos]} and {p.index} share position")
            seen[p.pos] = p.index
            colors.add(p.color)
        if len(points) >= 2 and len(colors) < 2:
            raise MonochromaticInstance(
                f"all {len(points)} points are {points[0].color}")
        self.points = points
        self.n = len(points)

    def __eq__(self, other):
        return isinstance(other, Instance) and self.points == other.points

    def __repr__(self):
        return f"Instance(n={self.n})"

    def reds(self):
        return [p for p in self.points if p.color == RED]

    def blues(self):
        return [p for p in self.points if p.color == BLUE]

    @staticmethod
    def from_rows(rows):
        """rows: iterable of (x_text, y_text, color)."""
        pts = []
        for i, (x, y, c) in enumerate(rows):
            pts.append(ColoredPoint(parse_coordinate(x), parse_coordinate(y), c, i))
        return Instance(pts)
