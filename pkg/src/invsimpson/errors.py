"""Exception hierarchy.

Every error carries a stable ``code`` string so the command-line front end
can map failures onto exit codes without string matching on messages.
"""


class InverseSimpsonError(Exception):
    """Base class for all library errors."""

    code = "ERROR"


class InputError(InverseSimpsonError, ValueError):
    """Bad caller-supplied data (maps to exit code 2 in the CLI)."""

    code = "INPUT"


class CountExceedsTrialsError(InputError):
    code = "COUNT_EXCEEDS_TRIALS"


class EmptyArmError(InputError):
    code = "EMPTY_ARM"


class DomainError(InputError):
    code = "DOMAIN"


class ParseError(InputError):
    code = "PARSE"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class AnalysisError(InverseSimpsonError):
    """The data are valid but the requested analysis cannot be carried out
    (maps to exit code 1 in the CLI)."""

    code = "ANALYSIS"


class DegenerateRateError(AnalysisError):
    code = "DEGENERATE_RATE"


class TieError(AnalysisError):
    code = "TIE"


class PlacementError(AnalysisError):
    code = "PLACEMENT"


class DegenerateSplitError(AnalysisError):
    code = "DEGENERATE"


class InfeasibleError(AnalysisError):
    code = "INFEASIBLE"


class NoConvergenceError(AnalysisError):
    code = "NO_CONVERGENCE"


class TooLargeError(AnalysisError):
    code = "TOO_LARGE"
