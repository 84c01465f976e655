"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` plus a human
message so the API and CLI can surface the same diagnostics.
"""

from __future__ import annotations


class UncmapError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigError(UncmapError):
    """Fatal environment/configuration problem (missing folder, bad flag)."""

    code = "config_error"


class DatasetNotFoundError(UncmapError):
    code = "dataset_not_found"

    def __init__(self, dataset_id: str):
        super().__init__(f"unknown dataset id: {dataset_id!r}")
        self.dataset_id = dataset_id


class MeasureNotFoundError(UncmapError):
    code = "measure_not_found"

    def __init__(self, measure_id: str):
        super().__init__(f"unknown measure id: {measure_id!r}")
        self.measure_id = measure_id


class CsvValidationError(UncmapError):
    """A CSV file failed the dataset contract.

    ``row`` is 1-based (header is row 1); ``column`` is a header name when
    the problem is tied to a specific cell.
    """

    code = "csv_invalid"

    def __init__(self, file: str, reason: str, row: int | None = None,
                 column: str | None = None):
        loc = file
        if row is not None:
            loc += f", row {row}"
        if column is not None:
            loc += f", column {column!r}"
        super().__init__(f"{loc}: {reason}")
        self.file = file
        self.row = row
        self.column = column
        self.reason = reason


class InvalidRequestError(UncmapError):
    """Bad hyperparameters, projection spec, grid spec or request shape."""

    code = "invalid_request"


class CapabilityError(UncmapError):
    """An operation needs a capability the model kind does not declare."""

    code = "capability_mismatch"

    def __init__(self, required: str, model_kind: str, available: set[str],
                 measure_id: str | None = None):
        who = f"measure {measure_id!r}" if measure_id else "operation"
        super().__init__(
            f"{who} requires capability {required!r} but model "
            f"{model_kind!r} only provides {sorted(available)}"
        )
        self.measure_id = measure_id
        self.required = required
        self.model_kind = model_kind


class TotalConflictError(UncmapError):
    """Dempster combination is undefined: all joint mass is conflicting."""

    code = "total_conflict"


class InternalError(UncmapError):
    code = "internal_error"
