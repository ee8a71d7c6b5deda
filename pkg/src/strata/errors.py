"""Exception hierarchy shared by every strata module."""


class StrataError(Exception):
    """Base class for all errors raised by strata."""


class InvalidVertex(StrataError, ValueError):
    pass


class DisconnectedGraph(StrataError, ValueError):
    pass


class CoverageMismatch(StrataError, ValueError):
    """A layout does not cover exactly the vertices of its host graph."""


class NotBipartite(StrataError, ValueError):
    pass


class NotATree(StrataError, ValueError):
    pass


class InvalidDrawing(StrataError, ValueError):
    pass


class InvalidTrackLayout(StrataError, ValueError):
    pass


class InvalidDecomposition(StrataError, ValueError):
    pass


class LevelMismatch(StrataError):
    """Internal consistency failure while unwrapping a track layout."""


class Exhausted(StrataError):
    """Every sweep vertex is already rightmost in its layer."""


class WidthTooLarge(StrataError, ValueError):
    pass


class VertexAlreadyPlaced(StrataError, ValueError):
    pass


class NotACycle(StrataError, ValueError):
    pass


class WrongTrackCount(StrataError, ValueError):
    pass


class BudgetExceeded(StrataError):
    pass


class RealizationFailed(StrataError):
    pass


class NotALeaf(StrataError, ValueError):
    pass


class InvalidHalinInput(StrataError, ValueError):
    pass


class InvalidDiagram(StrataError, ValueError):
    pass


class BadParams(StrataError, ValueError):
    pass


class BoundaryMismatch(StrataError, ValueError):
    pass


class InvalidObject(StrataError, ValueError):
    pass


class RayStyleNeedsThreeTracks(StrataError, ValueError):
    pass


class InvalidLayering(StrataError, ValueError):
    pass
