"""Exception hierarchy shared by all solver modules.

Each class carries a short machine-readable ``category`` used by the CLI
to report failures with stable identifiers.
"""


class PatrolError(Exception):
    """Base class for all errors raised by this package."""

    category = "error"


class InvalidGraphError(PatrolError):
    """Graph construction violated an invariant (self-loop, duplicate edge, ...)."""

    category = "invalid-graph"


class NoCoveringSetError(PatrolError):
    """The graph has an isolated node, so no edge set can cover every node."""

    category = "no-covering-set"


class InvalidWalkError(PatrolError):
    """A walk breaks the adjacency rule; ``index`` is the offending step."""

    category = "invalid-walk"

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InvalidStrategyError(PatrolError):
    """A mixed strategy is malformed (bad probabilities, wrong instance, ...)."""

    category = "invalid-strategy"


class UnsupportedParametersError(PatrolError):
    """The requested operation is not defined for these game parameters."""

    category = "unsupported"


class CapExceededError(PatrolError):
    """An enumeration or search exceeded its configured size cap."""

    category = "cap-exceeded"


class NoClosedFormError(PatrolError):
    """No closed-form value is known for the requested instance."""

    category = "no-closed-form"
