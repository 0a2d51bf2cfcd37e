"""Exception hierarchy.

Every error carries the process exit code the CLI maps it to, so scripts can
tell a malformed file apart from a graph outside the supported class.
"""


class PerfMatchError(Exception):
    exit_code = 1


class PreconditionError(PerfMatchError, ValueError):
    """An operation was called with arguments outside its contract."""

    exit_code = 2


class ParseError(PerfMatchError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NotPlanarError(PerfMatchError):
    exit_code = 3


class NotInClassError(PerfMatchError):
    """The graph is outside the class a mode can handle (e.g. has a K3,3 minor)."""

    exit_code = 3


class InvalidDecompositionError(PerfMatchError):
    exit_code = 4

    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class InternalConsistencyError(PerfMatchError):
    exit_code = 5


class GadgetSynthesisError(InternalConsistencyError):
    """No template produced a planar gadget with the requested signature."""
