"""Exception and warning types shared across the package."""


class TuranError(ValueError):
    """Base class for invalid-input errors raised by turanlab."""


class TooFewVertices(TuranError):
    pass


class DegenerateEdge(TuranError):
    pass


class NotConvex(TuranError):
    pass


class PointNotOnBoundary(TuranError):
    pass


class VertexNotAcute(TuranError):
    pass


class EvalAtZero(TuranError):
    pass


class OmegaOutOfRange(TuranError):
    pass


class FramePreconditionFailed(TuranError):
    pass


class ZetaTooFar(FramePreconditionFailed):
    pass


class JTooSmall(TuranError):
    pass


class RTooLarge(TuranError):
    pass


class ZerosOutsideK(TuranError):
    pass


class ZerosOutsideDisk(TuranError):
    pass


class ToleranceNotMet(RuntimeWarning):
    """Adaptive quadrature stopped at max depth before reaching the tolerance."""


class NotConverged(RuntimeWarning):
    """An optimizer hit its iteration cap; the best value found is returned."""
