"""Exception hierarchy shared by all modules."""


class FairSCError(ValueError):
    """Base class for every error raised by this package."""


class EmptyCluster(FairSCError):
    pass


class ZeroVolume(FairSCError):
    pass


class GraphFormatError(FairSCError):
    """Malformed edge-list or label file.

    ``lineno`` is the 1-based offending line, or None when not line-specific.
    """

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ParseError(GraphFormatError):
    pass


class VertexOutOfRange(GraphFormatError, IndexError):
    pass


class DuplicateEdge(GraphFormatError):
    pass


class NegativeWeight(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class SingleGroup(FairSCError):
    pass


class NotSymmetric(FairSCError):
    pass


class ConvergenceFailure(FairSCError):
    pass


class NotPositiveDefinite(FairSCError):
    pass


class InvalidK(FairSCError):
    pass


class IsolatedVertex(FairSCError):
    pass


class ConfigError(FairSCError):
    pass


class Unbalanced(ConfigError):
    pass


class Indivisible(FairSCError):
    pass


class UnsupportedGroupCount(FairSCError):
    pass


class LengthMismatch(FairSCError):
    pass


class KMismatch(FairSCError):
    pass
