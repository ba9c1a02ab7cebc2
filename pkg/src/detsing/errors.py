"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ValidationError -> 1,
PreconditionError -> 2, LimitError -> 3.
"""


class DetsingError(Exception):
    """Base class for all package errors."""


class ValidationError(DetsingError):
    """Malformed input: model files, expressions, bad command arguments."""


class ParseError(ValidationError):
    """Syntax error in a polynomial expression or model file.

    Carries a human-readable position (offset for expressions, line for
    model files).
    """

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif position is not None:
            where = f" (at position {position})"
        super().__init__(message + where)


class UnknownVariableError(ValidationError):
    """A name was used that is not in the active variable set."""


class VariableSetMismatchError(ValidationError):
    """Operands built over different variable sets were combined."""


class PreconditionError(DetsingError):
    """A mathematical precondition of an operation is not satisfied."""


class DimensionMismatchError(PreconditionError):
    """A stratum does not have its expected dimension; the model is not
    determinantal of the declared type."""


class InconsistentDataError(PreconditionError):
    """User-supplied numeric data contradicts itself (e.g. negative
    solved multiplicities)."""


class LimitError(DetsingError):
    """An internal iteration or size cap was exceeded."""
