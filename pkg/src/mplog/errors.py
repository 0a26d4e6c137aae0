"""Exception types shared across the package."""


class MplogError(Exception):
    """Base class for every error raised by mplog."""


class DenominatorVanishes(MplogError):
    pass


class SingularMatrix(MplogError):
    pass


class ParseError(MplogError, ValueError):
    pass


class DivergentSymbol(MplogError):
    """A symbol violates one of the endpoint convergence conditions."""

    def __init__(self, message, symbol=None):
        super().__init__(message)
        self.symbol = symbol


class DegenerateFrame(MplogError):
    pass


class FrameMismatch(MplogError):
    pass


class CancellationFailure(MplogError):
    pass


class NotDepthTwo(MplogError):
    pass


class OutOfDomain(MplogError):
    pass


class PathTooClose(MplogError):
    pass


class DivergenceWithoutEpsilon(MplogError):
    pass


class SamplingExhausted(MplogError):
    pass


class QuotientLayerRejected(MplogError):
    pass
