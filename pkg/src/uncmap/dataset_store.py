"""CSV dataset ingestion and catalog.

Dataset contract (strict on purpose, documented in the README):
first row is a header, the last column is the class label (any non-empty
string), every other column is numeric with '.' as the decimal separator,
comma delimited, UTF-8 (a leading BOM is tolerated). Empty cells and
non-finite values are rejected per file. Labels are encoded by first
appearance order, which keeps class indices stable across reloads.
"""

from __future__ import annotations

import csv
import hashlib
import math
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, CsvValidationError, DatasetNotFoundError


@dataclass(frozen=True)
class Dataset:
    id: str
    feature_names: list[str]
    X: np.ndarray          # N x d, finite floats
    y: np.ndarray          # N, class indices in [0, K)
    class_names: list[str]
    source_path: Path
    fingerprint: str       # sha256 of the file bytes; cache key component

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


@dataclass(frozen=True)
class DatasetSummary:
    id: str
    n_samples: int
    n_features: int
    n_classes: int
    feature_names: list[str]
    class_names: list[str]
    feature_min: list[float]
    feature_max: list[float]


@dataclass(frozen=True)
class Diagnostic:
    """Per-file rejection report. ``row`` is 1-based, header is row 1."""
    file: str
    reason: str
    row: int | None = None
    column: str | None = None

    def __str__(self) -> str:
        loc = self.file
        if self.row is not None:
            loc += f", row {self.row}"
        if self.column is not None:
            loc += f", column {self.column!r}"
        return f"{loc}: {self.reason}"


@dataclass
class ScanResult:
    summaries: list[DatasetSummary] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    paths: dict[str, Path] = field(default_factory=dict)


def parse_csv(path: Path) -> Dataset:
    """Parse and validate one CSV file into a Dataset.

    Raises CsvValidationError with file/row/column context on the first
    violation found.
    """
    path = Path(path)
    name = path.name
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise CsvValidationError(name, f"unreadable: {exc}") from exc
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise CsvValidationError(name, f"not valid UTF-8: {exc}") from exc

    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise CsvValidationError(name, "file is empty")

    header = [h.strip() for h in rows[0]]
    if len(header) < 3:
        raise CsvValidationError(
            name, "need at least 2 feature columns plus a label column", row=1)
    if any(not h for h in header):
        raise CsvValidationError(name, "empty header cell", row=1)
    feature_names = header[:-1]
    if len(set(feature_names)) != len(feature_names):
        raise CsvValidationError(name, "duplicate feature names", row=1)

    data: list[list[float]] = []
    labels: list[str] = []
    for r, cells in enumerate(rows[1:], start=2):
        if not cells:
            continue  # blank trailing line
        if len(cells) != len(header):
            raise CsvValidationError(
                name, f"expected {len(header)} cells, found {len(cells)}", row=r)
        values = []
        for c, cell in enumerate(cells[:-1]):
            cell = cell.strip()
            if not cell:
                raise CsvValidationError(
                    name, "empty cell", row=r, column=feature_names[c])
            try:
                v = float(cell)
            except ValueError:
                raise CsvValidationError(
                    name, f"non-numeric value {cell!r}", row=r,
                    column=feature_names[c]) from None
            if not math.isfinite(v):
                raise CsvValidationError(
                    name, f"non-finite value {cell!r}", row=r,
                    column=feature_names[c])
            values.append(v)
        label = cells[-1].strip()
        if not label:
            raise CsvValidationError(
                name, "empty label", row=r, column=header[-1])
        data.append(values)
        labels.append(label)

    if len(data) < 2:
        raise CsvValidationError(name, f"need at least 2 data rows, found {len(data)}")

    # encode labels by first appearance
    class_names: list[str] = []
    index: dict[str, int] = {}
    y = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels):
        if lab not in index:
            index[lab] = len(class_names)
            class_names.append(lab)
        y[i] = index[lab]
    if len(class_names) < 2:
        raise CsvValidationError(name, "need at least 2 distinct classes")

    return Dataset(
        id=path.stem,
        feature_names=feature_names,
        X=np.asarray(data, dtype=np.float64),
        y=y,
        class_names=class_names,
        source_path=path,
        fingerprint=hashlib.sha256(raw).hexdigest(),
    )


def summarize(ds: Dataset) -> DatasetSummary:
    return DatasetSummary(
        id=ds.id,
        n_samples=ds.n_samples,
        n_features=ds.n_features,
        n_classes=ds.n_classes,
        feature_names=list(ds.feature_names),
        class_names=list(ds.class_names),
        feature_min=[float(v) for v in ds.X.min(axis=0)],
        feature_max=[float(v) for v in ds.X.max(axis=0)],
    )


def scan_folder(path: Path) -> ScanResult:
    """Scan a folder for ``*.csv`` files; bad files become diagnostics.

    A missing or unreadable folder is a fatal ConfigError; a broken file
    is not. Summaries come back sorted by dataset id.
    """
    path = Path(path)
    if not path.is_dir():
        raise ConfigError(f"dataset folder does not exist: {path}")
    result = ScanResult()
    for file in sorted(path.iterdir()):
        if not file.is_file() or file.suffix.lower() != ".csv":
            continue
        if file.stem in result.paths:
            result.diagnostics.append(
                Diagnostic(file=file.name,
                           reason=f"duplicate dataset id {file.stem!r}"))
            continue
        try:
            ds = parse_csv(file)
        except CsvValidationError as exc:
            result.diagnostics.append(
                Diagnostic(file=exc.file, reason=exc.reason,
                           row=exc.row, column=exc.column))
            continue
        result.summaries.append(summarize(ds))
        result.paths[ds.id] = file
    result.summaries.sort(key=lambda s: s.id)
    return result


class DatasetStore:
    """Catalog over a watched folder.

    Reads (summaries, load) are safe from any thread; refresh swaps the
    catalog atomically under a lock so readers see either the old or the
    new state. Datasets handed out are immutable and stay valid after
    later refreshes.
    """

    def __init__(self, root: Path):
        self.root = Path(root)
        self._lock = threading.Lock()
        self._scan = ScanResult()
        self.refresh()

    def refresh(self) -> list[DatasetSummary]:
        with self._lock:
            self._scan = scan_folder(self.root)
            return list(self._scan.summaries)

    def summaries(self) -> list[DatasetSummary]:
        return list(self._scan.summaries)

    def diagnostics(self) -> list[Diagnostic]:
        return list(self._scan.diagnostics)

    def ids(self) -> list[str]:
        return [s.id for s in self._scan.summaries]

    def load(self, dataset_id: str) -> Dataset:
        """Parse the file behind a catalogued id.

        Re-reads from disk, so a file that turned invalid since the last
        scan raises CsvValidationError rather than serving stale data.
        """
        path = self._scan.paths.get(dataset_id)
        if path is None:
            raise DatasetNotFoundError(dataset_id)
        return parse_csv(path)
