"""Exception hierarchy shared across the package.

Every error carries the process exit code the command line tool maps it to,
so the CLI can stay a thin shell around the library.
"""

from __future__ import annotations


class QreesError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ProblemParseError(QreesError):
    """A problem file or polynomial string could not be parsed."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedCharacteristic(QreesError):
    """The requested operation needs characteristic zero."""

    exit_code = 3


class ChartSplitRequired(QreesError):
    """A center or coordinate change fell outside a single affine chart.

    Raised when the resolution driver needs a locus it cannot express in the
    current coordinates (a non-linear hypersurface of maximal contact, a
    non-rational point on a line, or a tie between incompatible centers).
    """

    exit_code = 4


class NotTerminated(QreesError):
    """The resolution loop hit its step budget with singular points left."""

    exit_code = 5

    def __init__(self, message: str, trace: dict | None = None) -> None:
        super().__init__(message)
        self.trace = trace


class PreconditionError(QreesError):
    """Input violates a documented precondition (weights, divisors, point)."""

    exit_code = 6
