"""Exception types shared across the package."""


class EquicheckError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EquicheckError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "%d:%d: %s" % (line, column, message)
        super().__init__(message)


class SegmentError(EquicheckError):
    """Base class for segment marker violations."""


class DuplicateSegmentId(SegmentError):
    pass


class SegmentInsidePar(SegmentError):
    pass


class EmptySegment(SegmentError):
    pass


class NestedSegments(SegmentError):
    pass


class UnknownSegment(SegmentError):
    pass


class SegmentIdMismatch(SegmentError):
    pass


class ContextMismatch(SegmentError):
    pass


class IncompleteExploration(EquicheckError):
    """A bounded enumeration hit its budget; the carried result is partial."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class RenamingValidationFailed(EquicheckError):
    """Internal guard: a generated renaming failed its side conditions."""
