"""Exception hierarchy shared by all curvequot modules."""


class CurvequotError(Exception):
    """Base class for every error raised by this package."""


# graphs


class UnknownVertex(CurvequotError, KeyError):
    def __init__(self, vertex):
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self):
        return f"unknown vertex {self.vertex!r}"


class DisconnectedInput(CurvequotError):
    pass


class CapExceeded(CurvequotError):
    pass


class NotAutomorphism(CurvequotError):
    pass


class GraphInvalid(CurvequotError, ValueError):
    pass


# orbifolds


class NotExceptional(CurvequotError, ValueError):
    pass


class ExceptionalInput(CurvequotError, ValueError):
    pass


class NotHyperbolic(CurvequotError, ValueError):
    pass


# train tracks


class TrackInvalid(CurvequotError, ValueError):
    """Raised by :func:`curvequot.traintrack.validate`; ``problems`` lists every violation."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


class RibbonInconsistent(CurvequotError, ValueError):
    pass


class IndexMismatch(CurvequotError, ValueError):
    pass


class TooLarge(CurvequotError):
    pass


# interval exchanges


class NcieInvalid(CurvequotError, ValueError):
    """Base for exchange validation failures; ``errors`` holds all of them."""

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.errors = errors if errors is not None else [self]


class OverlappingAttachments(NcieInvalid):
    pass


class CoverageGap(NcieInvalid):
    pass


class WidthMismatch(NcieInvalid):
    pass


class OrientationInconsistent(NcieInvalid):
    pass


class SaddleConnection(CurvequotError):
    """Terminal bands tie in width; ``trace`` is the partial induction trace, if any."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class DegenerateBand(CurvequotError):
    pass


class IllFormedInduction(CurvequotError, ValueError):
    pass


class NonpositiveInput(CurvequotError, ValueError):
    pass


# farey model


class BadDeterminant(CurvequotError, ValueError):
    pass


class EqualSlopes(CurvequotError, ValueError):
    pass


class Rejected(CurvequotError, ValueError):
    pass
