class SupervisoryError(ValueError):
    pass


class UnknownEventError(SupervisoryError):
    pass


class EventConflictError(SupervisoryError):
    pass


class NondeterminismError(SupervisoryError):
    pass


class AlphabetMismatchError(SupervisoryError):
    pass


class ProjectionError(SupervisoryError):
    pass


class NotPrefixClosedError(SupervisoryError):
    pass


class ProblemValidationError(SupervisoryError):
    pass


class SynthesisInvariantError(SupervisoryError):
    """A computed language failed its own post-condition check."""


class FormatError(SupervisoryError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")
