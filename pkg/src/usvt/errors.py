"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class MatrixFormatError(ValidationError):
    """A matrix file cannot be parsed.

    Attributes
    ----------
    line : int or None
        1-based line number of the offending row, when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
