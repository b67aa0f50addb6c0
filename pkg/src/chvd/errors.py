"""Exception hierarchy shared by all modules."""


class ChvdError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(ChvdError, ValueError):
    pass


class WeightOverflow(InvalidGraph):
    """Total vertex weight does not fit into an unsigned 64-bit integer."""


class NotChordal(ChvdError, ValueError):
    pass


class NotChordalBoundary(NotChordal):
    pass


class IncompatibleBoundaries(ChvdError, ValueError):
    pass


class NotASeparator(ChvdError, ValueError):
    pass


class PreconditionFailed(ChvdError, ValueError):
    pass


class InvalidDecomposition(ChvdError, ValueError):
    pass


class DependentInput(ChvdError, ValueError):
    """A set handed to the representative-family routine is not independent."""


class TooLarge(ChvdError, ValueError):
    pass


class InstanceTooLarge(TooLarge):
    pass


class InvariantViolation(ChvdError, AssertionError):
    """An internal invariant of the dynamic program failed."""


class FormatError(ChvdError, ValueError):
    """Malformed graph or decomposition file."""
