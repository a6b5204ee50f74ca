"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all sqroot errors."""


# -- graph construction and comparison ---------------------------------------

class DuplicateVertex(Error):
    pass


class UnknownVertex(Error):
    pass


class LoopEdge(Error):
    pass


class DuplicateEdge(Error):
    pass


class VertexSetMismatch(Error):
    pass


class NotSubgraph(Error):
    pass


# -- budgets ------------------------------------------------------------------

class BudgetExceeded(Error):
    pass


# -- set splitting ------------------------------------------------------------

class NotAPartition(Error):
    pass


# -- reductions ---------------------------------------------------------------

class NotPlanar(Error):
    pass


class EmptyEdgeSet(Error):
    pass


class ImproperColoring(Error):
    pass


class InvalidPartition(Error):
    pass


class InvalidInstance(Error):
    pass


class EmptyCollection(Error):
    pass


class ConstructionSelfCheckFailed(Error):
    """An internal re-verification failed; this signals a bug, not bad input."""


class NotASquareRoot(Error):
    pass


class DisjointnessViolated(Error):
    """A certified-impossible overlap was observed while reading a root."""


# -- solver -------------------------------------------------------------------

class TranscriptMismatch(Error):
    pass


# -- file formats -------------------------------------------------------------

class EdgeListParseError(Error):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message


class FormatError(Error):
    pass
