"""Exception hierarchy. Every error raised on bad input derives from GBMSTError."""


class GBMSTError(ValueError):
    pass


class EmptyBall(GBMSTError):
    pass


class DimensionMismatch(GBMSTError):
    pass


class InvalidSplit(GBMSTError):
    pass


class CannotSplit(GBMSTError):
    pass


class DegenerateBall(GBMSTError):
    pass


class NoCoreBalls(GBMSTError):
    pass


class TooManyClusters(GBMSTError):
    pass


class InvalidK(GBMSTError):
    pass


class LabelLengthMismatch(GBMSTError):
    pass


class TooFewPoints(GBMSTError):
    pass


class InvalidDataset(GBMSTError):
    pass


class ParseError(GBMSTError):
    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class RaggedRows(ParseError):
    pass


class EmptyFile(ParseError):
    pass


class InvalidSpec(GBMSTError):
    pass


class InvalidConfig(GBMSTError):
    pass


class InvariantViolation(RuntimeError):
    """Internal consistency check failed; indicates a bug, not bad input."""
