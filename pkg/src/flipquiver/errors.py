"""Error taxonomy shared by all modules.

Exit-code classes used by the CLI:
  2 -- invalid input / violated precondition
  3 -- algorithmic failure (reduction impossible, degenerate construction, ...)
  4 -- exploration budget exhausted
"""

from __future__ import annotations


class FlipQuiverError(Exception):
    """Base class for all domain errors."""

    exit_code = 3


class InvalidInput(FlipQuiverError):
    exit_code = 2


class AlgorithmicFailure(FlipQuiverError):
    exit_code = 3


# --- quiver core -----------------------------------------------------------

class UnknownNode(InvalidInput):
    pass


class UnknownArrow(InvalidInput):
    pass


class NodeHasLoop(InvalidInput):
    pass


class QuiverHasTwoCycles(InvalidInput):
    pass


class NotReduced(InvalidInput):
    """Mutation requires a reduced quiver with potential."""


class NonReducible(AlgorithmicFailure):
    """Reduction got stuck: no quadratic term can be eliminated.

    Carries the offending quadratic term (cycle of arrow ids) and the
    potential at the moment of failure, for post-mortem inspection.
    """

    def __init__(self, message, quadratic=None, potential=None):
        super().__init__(message)
        self.quadratic = quadratic
        self.potential = potential


# --- toric -----------------------------------------------------------------

class InvalidGroup(InvalidInput):
    pass


class MeetingOfChampions(AlgorithmicFailure):
    """Degenerate ray configuration for which the triangulation routine refuses."""


class BoundaryEdge(InvalidInput):
    pass


class UnknownEdge(InvalidInput):
    pass


class NotFlippable(InvalidInput):
    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class InvalidTriangulation(InvalidInput):
    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = violations or []


# --- exploration -----------------------------------------------------------

class BudgetExceeded(FlipQuiverError):
    """Exploration exceeded its node budget; carries the partial result."""

    exit_code = 4

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NodeSetMismatch(InvalidInput):
    pass


class MissingArrow(InvalidInput):
    pass


class NoCandidateSequence(AlgorithmicFailure):
    """Sequence assignment stalled: some quiver got no mutation sequence."""


class VerificationFailed(AlgorithmicFailure):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InconsistentLabelling(AlgorithmicFailure):
    """Two flip paths transported different edge labellings to one triangulation."""
