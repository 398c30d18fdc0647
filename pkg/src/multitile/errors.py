"""Exception hierarchy.  Every error carries a stable ``code`` string."""

from __future__ import annotations


class MultitileError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details) -> None:
        super().__init__(message)
        self.details = details


class ParseError(MultitileError):
    code = "PARSE_ERROR"


class MixedDiscriminantsError(MultitileError):
    code = "MIXED_DISCRIMINANTS"


class InvalidPolygonError(MultitileError):
    code = "INVALID_POLYGON"


class RegionUnboundedError(MultitileError):
    code = "REGION_UNBOUNDED"


class NotAnEdgeError(MultitileError):
    code = "NOT_AN_EDGE"


class MissingPointError(MultitileError):
    code = "X_MISSING_POINT"


class IncommensurableError(MultitileError):
    code = "INCOMMENSURABLE"


class PreconditionUnverifiedError(MultitileError):
    code = "PRECONDITION_UNVERIFIED"


class StructureViolationError(MultitileError):
    code = "STRUCTURE_VIOLATION"


class WindowTooLargeError(MultitileError):
    code = "WINDOW_TOO_LARGE"
