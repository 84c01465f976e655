"""Gaussian naive Bayes with per-class univariate Gaussians.

Log-domain throughout, with max-subtraction before exponentiation and a
variance floor tied to the overall feature variance, so degenerate
training columns cannot produce NaNs.
"""

from __future__ import annotations

import numpy as np

from .base import PROBABILITY, ClassifierSpec, FittedModel

_LOG_2PI = float(np.log(2.0 * np.pi))


class GaussianNbModel(FittedModel):
    kind = "gaussian_nb"
    capabilities = frozenset({PROBABILITY})

    def __init__(self, spec: ClassifierSpec, points: np.ndarray, y: np.ndarray,
                 class_names: list[str]):
        super().__init__(spec, points, y, class_names)
        n, d = points.shape
        k = self.n_classes
        feature_var = points.var(axis=0)
        floor = 1e-9 * (feature_var + 1e-12)
        self._log_prior = np.empty(k)
        self._mean = np.empty((k, d))
        self._var = np.empty((k, d))
        for c in range(k):
            rows = points[y == c]
            self._log_prior[c] = np.log(rows.shape[0] / n)
            self._mean[c] = rows.mean(axis=0)
            self._var[c] = np.maximum(rows.var(axis=0), floor)
        self._log_norm = -0.5 * (_LOG_2PI + np.log(self._var))

    def predict_proba(self, q) -> np.ndarray:
        q = self._query(q)
        log_joint = self._log_prior + (
            self._log_norm - (q - self._mean) ** 2 / (2.0 * self._var)
        ).sum(axis=1)
        log_joint -= log_joint.max()
        w = np.exp(log_joint)
        return w / w.sum()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "class_names": self.class_names,
            "log_prior": self._log_prior.tolist(),
            "mean": self._mean.tolist(),
            "var": self._var.tolist(),
        }
