"""2D working space: raw feature pairs or a 2-component PCA.

Models are trained in this projected space and the heatmap grid lives in
the same space, so the map always depicts the trained model's actual
input domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset_store import Dataset
from .errors import InvalidRequestError

FEATURE_PAIR = "feature_pair"
PCA = "pca"


@dataclass(frozen=True)
class ProjectionSpec:
    mode: str                      # "feature_pair" or "pca"
    feature_x: str | None = None
    feature_y: str | None = None
    standardize: bool | None = None  # None = mode default (off for pairs, on for pca)

    def resolved_standardize(self) -> bool:
        if self.standardize is None:
            return self.mode == PCA
        return self.standardize

    def validate(self, dataset: Dataset) -> None:
        if self.mode not in (FEATURE_PAIR, PCA):
            raise InvalidRequestError(f"unknown projection mode {self.mode!r}")
        if self.mode == FEATURE_PAIR:
            if not self.feature_x or not self.feature_y:
                raise InvalidRequestError(
                    "feature_pair projection needs feature_x and feature_y")
            if self.feature_x == self.feature_y:
                raise InvalidRequestError(
                    f"feature_x and feature_y must differ, both are {self.feature_x!r}")
            for f in (self.feature_x, self.feature_y):
                if f not in dataset.feature_names:
                    raise InvalidRequestError(
                        f"unknown feature {f!r}; dataset {dataset.id!r} has "
                        f"{dataset.feature_names}")
        else:
            if dataset.n_features < 2:
                raise InvalidRequestError("pca needs at least 2 features")

    def cache_token(self) -> tuple:
        return (self.mode, self.feature_x, self.feature_y,
                self.resolved_standardize())


@dataclass(frozen=True)
class Projected2D:
    P: np.ndarray                  # N x 2 projected coordinates
    axis_labels: tuple[str, str]
    means: np.ndarray              # per-used-feature centering offsets
    scales: np.ndarray             # per-used-feature divisors (1.0 when off)
    loadings: np.ndarray | None = None          # 2 x d, PCA only
    explained_fractions: tuple[float, float] | None = None

    @property
    def n_points(self) -> int:
        return self.P.shape[0]


@dataclass(frozen=True)
class Bounds:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin


def _standardize_columns(cols: np.ndarray, names: list[str]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    means = cols.mean(axis=0)
    stds = cols.std(axis=0)  # population std, matches the test tolerance
    for j, s in enumerate(stds):
        if s == 0.0:
            raise InvalidRequestError(
                f"feature {names[j]!r} has zero variance, cannot standardize")
    return (cols - means) / stds, means, stds


def project(dataset: Dataset, spec: ProjectionSpec) -> Projected2D:
    """Project the dataset into 2D as configured; deterministic."""
    spec.validate(dataset)
    standardize = spec.resolved_standardize()

    if spec.mode == FEATURE_PAIR:
        ix = dataset.feature_names.index(spec.feature_x)
        iy = dataset.feature_names.index(spec.feature_y)
        cols = dataset.X[:, [ix, iy]].astype(np.float64)
        names = [spec.feature_x, spec.feature_y]
        if standardize:
            P, means, scales = _standardize_columns(cols, names)
        else:
            P, means, scales = cols, np.zeros(2), np.ones(2)
        return Projected2D(P=P, axis_labels=(names[0], names[1]),
                           means=means, scales=scales)

    # PCA: center (optionally standardize), eigendecompose the covariance,
    # keep the top-2 directions with a fixed sign convention.
    X = dataset.X.astype(np.float64)
    means = X.mean(axis=0)
    if standardize:
        scales = X.std(axis=0)
        for j, s in enumerate(scales):
            if s == 0.0:
                raise InvalidRequestError(
                    f"feature {dataset.feature_names[j]!r} has zero variance, "
                    "cannot standardize")
    else:
        scales = np.ones(X.shape[1])
    Z = (X - means) / scales
    cov = np.cov(Z, rowvar=False)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    loadings = eigvecs[:, :2].T.copy()   # 2 x d
    # sign convention: the largest-magnitude entry of each loading is positive
    for r in range(2):
        j = int(np.argmax(np.abs(loadings[r])))
        if loadings[r, j] < 0:
            loadings[r] = -loadings[r]
    total = float(eigvals.sum())
    fractions = (float(eigvals[0] / total), float(eigvals[1] / total)) if total > 0 \
        else (0.0, 0.0)
    P = Z @ loadings.T
    labels = (f"PC1 ({100 * fractions[0]:.1f}% var)",
              f"PC2 ({100 * fractions[1]:.1f}% var)")
    return Projected2D(P=P, axis_labels=labels, means=means, scales=scales,
                       loadings=loadings, explained_fractions=fractions)


def data_bounds(P: np.ndarray, margin_fraction: float = 0.1) -> Bounds:
    """Axis-aligned frame around projected points with a relative margin.

    A zero-range axis widens to unit width so grid construction never
    divides by zero.
    """
    if margin_fraction < 0:
        raise InvalidRequestError("margin_fraction must be >= 0")
    limits = []
    for axis in range(2):
        lo = float(P[:, axis].min())
        hi = float(P[:, axis].max())
        rng = hi - lo
        if rng == 0.0:
            limits.append((lo - 0.5, hi + 0.5))
        else:
            limits.append((lo - margin_fraction * rng, hi + margin_fraction * rng))
    return Bounds(xmin=limits[0][0], xmax=limits[0][1],
                  ymin=limits[1][0], ymax=limits[1][1])
