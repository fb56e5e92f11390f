"""Exception hierarchy shared by every module of the package."""


class SpectralTuranError(Exception):
    """Base class for all errors raised by this package."""


# graph6 I/O
class Graph6Error(SpectralTuranError, ValueError):
    pass


class MalformedHeader(Graph6Error):
    pass


class InvalidByte(Graph6Error):
    pass


class LengthMismatch(Graph6Error):
    """Wrong body length in a graph6 record, or mismatched vector lengths."""


class NonzeroPadding(Graph6Error):
    pass


# construction
class GraphError(SpectralTuranError, ValueError):
    pass


class InvalidPartCount(GraphError):
    pass


class CycleTooSmall(GraphError):
    pass


class InfeasibleDegree(GraphError):
    pass


class RetryBudgetExhausted(GraphError):
    pass


class InvalidProbability(GraphError):
    pass


class TooLarge(GraphError):
    pass


# numerics
class ConvergenceFailure(SpectralTuranError, ArithmeticError):
    pass


class InvalidR(SpectralTuranError, ValueError):
    pass


class NegativeEntries(SpectralTuranError, ValueError):
    pass


class TheoremViolation(SpectralTuranError):
    """A quadratic form that must be non-negative came out materially negative."""


class NegativeMu2(SpectralTuranError, ValueError):
    pass


class NotRegular(SpectralTuranError, ValueError):
    pass


class NotConnected(SpectralTuranError, ValueError):
    pass


class TooSmall(SpectralTuranError, ValueError):
    pass


# scanning
class SourceUnavailable(SpectralTuranError, OSError):
    pass


class ParseError(SpectralTuranError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyScan(SpectralTuranError):
    pass


class SinkFailure(SpectralTuranError, OSError):
    pass
