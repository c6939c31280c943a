"""Exception hierarchy separating input failures from analysis failures.

The CLI maps InputError (plus ValueError/OSError) to exit code 2 and
AnalysisError to exit code 3.
"""


class StylovarError(Exception):
    """Base class for all package-specific errors."""


class InputError(StylovarError):
    """Unusable input: missing files, malformed records, bad corpora."""


class MalformedRecordError(InputError):
    """A corpus record could not be parsed; the message names the location."""


class DuplicateIdError(InputError):
    """Two documents in one corpus share an id."""


class AnalysisError(StylovarError):
    """Data-dependent failure inside an analysis operation."""


class UndefinedMeasureError(AnalysisError):
    """A per-document measurement has no defined value (e.g. no word tokens)."""


class UndefinedDistributionError(AnalysisError):
    """A pattern distribution cannot be formed (zero windows, no smoothing)."""


class UndefinedStatisticError(AnalysisError):
    """A statistic is undefined for the given inputs (e.g. zero margin)."""


class WindowMismatchError(AnalysisError):
    """Two distributions with different window sizes were compared."""


class DegeneratePartitionError(AnalysisError):
    """A category partition is too small for the requested comparison."""
