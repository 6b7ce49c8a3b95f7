"""Exception hierarchy.

The CLI maps these onto exit codes: data problems (2) and numerical
failures (3). Usage errors are handled by argparse.
"""


class OrthantError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 3


class DataError(OrthantError):
    exit_code = 2


class NumericalError(OrthantError):
    exit_code = 3


class DimensionMismatch(DataError, ValueError):
    pass


class RankDeficient(DataError):
    pass


class ZeroOlsCoefficient(DataError):
    pass


class DimensionCap(DataError):
    pass


class MissingColumn(DataError):
    pass


class ParseError(DataError):
    def __init__(self, row, col, message):
        self.row = row
        self.col = col
        super().__init__(f"row {row}, column {col}: {message}")


class InvalidAlpha(OrthantError, ValueError):
    exit_code = 1


class SingularSubmatrix(NumericalError):
    pass


class NoValidCandidate(NumericalError):
    pass


class ConvergenceFailure(NumericalError):
    pass
