"""Exception hierarchy shared across the engine.

Every error carries a stable snake_case ``code`` so the CLI and the HTTP
service can emit machine-parsable reasons without string matching on
messages.
"""

from __future__ import annotations


class RankLabelError(Exception):
    """Base class for all engine errors."""

    code = "error"


class InvalidDataset(RankLabelError):
    """The input bytes do not form a usable CSV table."""

    code = "invalid_dataset"


class MalformedRow(RankLabelError):
    """A data row's cell count does not match the header."""

    code = "malformed_row"

    def __init__(self, row_index: int, message: str | None = None):
        self.row_index = row_index
        super().__init__(message or f"row {row_index} does not match header width")


class UnknownAttribute(RankLabelError):
    """A referenced column does not exist in the dataset."""

    code = "unknown_attribute"


class TypeMismatch(RankLabelError):
    """A column has the wrong kind for the requested operation."""

    code = "type_mismatch"


class EmptyColumn(RankLabelError):
    """A numeric operation found zero non-missing values."""

    code = "empty_column"


class InvalidArgument(RankLabelError):
    """An argument is outside its documented domain."""

    code = "invalid_argument"


class AllRowsDropped(RankLabelError):
    """Every row was dropped for missing required values."""

    code = "all_rows_dropped"


class InsufficientData(RankLabelError):
    """Too few points for the requested computation."""

    code = "insufficient_data"


class UndefinedCorrelation(RankLabelError):
    """Rank correlation is undefined (constant input)."""

    code = "undefined_correlation"


class EmptyGroup(RankLabelError):
    """A fairness test needs both groups to be nonempty."""

    code = "empty_group"


class NonBinaryAttribute(RankLabelError):
    """The sensitive attribute does not have exactly two values."""

    code = "non_binary_attribute"


class DegeneratePopulation(RankLabelError):
    """The population proportion is 0 or 1; the test is undefined."""

    code = "degenerate_population"


class WidgetError(RankLabelError):
    """Wraps an error raised while computing one label widget.

    ``widget`` names the originating widget; the original exception is
    preserved as ``cause`` (and as ``__cause__``).
    """

    code = "widget_error"

    def __init__(self, widget: str, cause: BaseException):
        self.widget = widget
        self.cause = cause
        if isinstance(cause, RankLabelError):
            self.code = cause.code
        super().__init__(f"{widget}: {cause}")
