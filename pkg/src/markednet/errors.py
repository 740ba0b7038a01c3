"""Exception hierarchy shared by all modules."""


class MarkedNetworkError(ValueError):
    """Base class for every domain error raised by this package."""


class NetworkParseError(MarkedNetworkError):
    """Syntax or consistency error in a network description.

    ``lineno`` is 1-based, or ``None`` when the error is not tied to a line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidNetworkError(MarkedNetworkError):
    pass


class PreconditionError(MarkedNetworkError):
    """An operation was called on a network that violates its hypotheses."""


class DivergentMonocycleError(MarkedNetworkError):
    pass


class CycleCapExceeded(MarkedNetworkError):
    pass


class DimensionMismatch(MarkedNetworkError):
    pass


class NotInPolyhedronError(MarkedNetworkError):
    pass


class UnboundedDirectionError(MarkedNetworkError):
    pass


class BoxTooLargeError(MarkedNetworkError):
    pass
