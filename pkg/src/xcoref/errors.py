"""Exception types shared across the package."""


class XCorefError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(XCorefError):
    """A corpus record is missing a field or has a mistyped field."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class IntegrityError(XCorefError):
    """A record is well-formed but internally inconsistent."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class FormatError(XCorefError):
    """A vector or matrix file violates its format."""


class DimensionMismatch(XCorefError):
    """Two vectors of different dimension were combined."""


class EmptyInput(XCorefError):
    """An operation requiring a non-empty input received an empty one."""


class MissingEntry(XCorefError):
    """A comparison-matrix lookup for a type pair absent from the file."""


class DuplicateMention(XCorefError):
    """The same mention key appears twice on one side of an evaluation."""


class PartitionError(XCorefError):
    """Chains stopped forming a partition of the mention set (internal bug)."""
