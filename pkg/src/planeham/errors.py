"""Exception types shared across the package.

The CLI maps these onto exit codes: hypothesis violations exit 1,
verification failures exit 2 and format problems exit 3.
"""


class HypothesisViolation(ValueError):
    """An input does not satisfy the preconditions of an operation."""


class InvalidEmbedding(HypothesisViolation):
    """A rotation system is inconsistent, disconnected or not planar."""


class InconsistentRotation(InvalidEmbedding):
    pass


class DisconnectedGraph(InvalidEmbedding):
    pass


class NonPlanarRotation(InvalidEmbedding):
    pass


class IneligibleGraph(HypothesisViolation):
    """Cyclic edge-connectivity requested for a graph without two disjoint cycles."""


class VerificationFailure(RuntimeError):
    """A constructed certificate failed its own check. Treat as a defect."""


class FormatError(ValueError):
    """Malformed file content."""
