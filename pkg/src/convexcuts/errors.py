"""Exception hierarchy shared by every module of the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input or failed geometric operations."""


class TooFewVertices(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class DegenerateArea(GeometryError):
    pass


class CutMissesInterior(GeometryError):
    """The cut line does not pass through the interior of the region."""


class RhoOutOfRange(GeometryError):
    pass


class ToleranceNotReached(RuntimeError):
    """An iterative refinement ran out of budget before meeting its tolerance."""


class NotAffineBetweenBreakpoints(RuntimeError):
    pass


class VerificationFailed(RuntimeError):
    """An internal consistency check failed; this indicates a geometry bug."""


class InfeasibleN(GeometryError):
    def __init__(self, message, max_n=None):
        super().__init__(message)
        self.max_n = max_n


class ConstructionFailed(RuntimeError):
    pass


class SchemaError(ValueError):
    pass
