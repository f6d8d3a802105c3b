"""Exception and warning types shared across the package.

Each exception carries the CLI exit status it maps to.
"""


class TcspError(Exception):
    exit_code = 1


class ParseError(TcspError, ValueError):
    """Malformed input text (CSV, change spec, diff, LCOV)."""

    exit_code = 2

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SemanticError(TcspError, ValueError):
    exit_code = 3


class UnknownLabelError(SemanticError, LookupError):
    kind = "label"

    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(f"unknown {self.kind}(s): {', '.join(self.labels)}")


class UnknownTestError(UnknownLabelError):
    kind = "test"


class UnknownStatementError(UnknownLabelError):
    kind = "statement"


class OverlapError(SemanticError):
    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(
            "statements listed as both deleted and modified: " + ", ".join(self.labels)
        )


class MatrixError(SemanticError):
    """Structurally invalid matrix (duplicate labels, ragged rows)."""


class MismatchError(SemanticError):
    """A derived value was paired with a matrix it was not derived from."""


class GoldenMismatchError(TcspError):
    exit_code = 4


class IngestWarning(UserWarning):
    """Non-fatal finding raised while reading or transforming inputs."""
