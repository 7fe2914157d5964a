"""Error types shared across the package.

Every degeneracy-related error carries the offending tuple of point indices (or
points) so callers can report exactly what violated a precondition.
"""

from __future__ import annotations


class WitnessGraphError(Exception):
    """Base class for all package errors."""


class CollinearBaseError(WitnessGraphError):
    """Raised when the base triple of an incircle test is collinear."""

    code = "COLLINEAR_BASE"

    def __init__(self, triple):
        self.offending = tuple(triple)
        super().__init__(f"COLLINEAR_BASE: {self.offending}")


class DegenerateInputError(WitnessGraphError):
    """Input violates the general-position class required by an operation."""

    code = "DEGENERATE_INPUT"

    def __init__(self, message, offending=None):
        self.offending = tuple(offending) if offending is not None else None
        detail = f" offending={self.offending}" if self.offending else ""
        super().__init__(f"DEGENERATE_INPUT: {message}{detail}")


class InstanceParseError(WitnessGraphError):
    """Instance file does not parse."""

    code = "PARSE"

    def __init__(self, message):
        super().__init__(f"PARSE: {message}")


class NotConvexError(WitnessGraphError):
    """Point set is not in strictly convex position."""

    code = "NOT_CONVEX"

    def __init__(self, offending=None):
        self.offending = tuple(offending) if offending is not None else None
        super().__init__(f"NOT_CONVEX: offending={self.offending}")


class NotPermutationError(WitnessGraphError):
    """Graph admits no realization as a permutation graph."""

    code = "NOT_PERMUTATION"

    def __init__(self, message="graph is not a permutation graph"):
        super().__init__(f"NOT_PERMUTATION: {message}")


class PerturbationFailedError(WitnessGraphError):
    """Deterministic perturbation schedule exhausted without success."""

    code = "PERTURBATION_FAILED"

    def __init__(self, message):
        super().__init__(f"PERTURBATION_FAILED: {message}")
