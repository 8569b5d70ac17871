"""Exception hierarchy shared by the whole package."""


class BpstError(Exception):
    """Base class for all package errors."""


class ParseError(BpstError):
    """Malformed input file; message names the offending line."""


class MonochromaticInstance(BpstError):
    """Instance with n >= 2 points of a single color; no bichromatic tree exists."""


class DegenerateInstance(BpstError):
    """Instance violating a structural precondition (duplicate positions, n = 0)."""


class DegenerateSpec(BpstError):
    """Generator spec that cannot produce a valid instance."""


class InstanceTooLarge(BpstError):
    """Exact solver invoked beyond its configured size bound."""


class Infeasible(BpstError):
    """No planar bichromatic spanning tree exists (degenerate collinear input)."""


class InvariantViolation(BpstError):
    """A property the construction guarantees was found broken at runtime."""


class CaseInvariantViolation(InvariantViolation):
    """Stage 2.2 case analysis found a configuration it proves impossible."""


class AttachFailure(InvariantViolation):
    """Every candidate edge for attaching a point to a star tree crosses something."""


class SweepExhausted(InvariantViolation):
    """No cell point passes the empty-triangle test (planarity precondition broken)."""


class ForestRemains(InvariantViolation):
    """Stitching terminated with disconnected cell trees."""
