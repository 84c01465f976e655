"""k-nearest-neighbour classifier with Laplace-smoothed probabilities."""

from __future__ import annotations

import numpy as np

from ..errors import InvalidRequestError
from .base import LOCAL_COUNTS, PROBABILITY, ClassifierSpec, FittedModel


class KnnModel(FittedModel):
    kind = "knn"
    capabilities = frozenset({PROBABILITY, LOCAL_COUNTS})

    def __init__(self, spec: ClassifierSpec, points: np.ndarray, y: np.ndarray,
                 class_names: list[str]):
        super().__init__(spec, points, y, class_names)
        self.k = spec.hyperparams["k"]
        self.alpha = spec.hyperparams["alpha"]
        if self.k > self.n_train:
            raise InvalidRequestError(
                f"k={self.k} exceeds the {self.n_train} training points")
        self._points = points.astype(np.float64, copy=True)
        self._y = y.astype(np.int64, copy=True)

    def _neighbor_indices(self, q: np.ndarray) -> np.ndarray:
        # squared distances; stable sort breaks ties by training index
        d2 = ((self._points - q) ** 2).sum(axis=1)
        return np.argsort(d2, kind="stable")[: self.k]

    def local_counts(self, q) -> np.ndarray:
        q = self._query(q)
        idx = self._neighbor_indices(q)
        return np.bincount(self._y[idx], minlength=self.n_classes)

    def predict_proba(self, q) -> np.ndarray:
        counts = self.local_counts(q)
        return (counts + self.alpha) / (self.k + self.alpha * self.n_classes)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "alpha": self.alpha,
            "class_names": self.class_names,
            "points": self._points.tolist(),
            "labels": self._y.tolist(),
        }
