"""Evidential k-NN: each neighbour contributes a simple mass function.

Neighbour i of class c at distance d contributes m({c}) = alpha0 *
exp(-gamma_c * d**2) with the rest on the full frame; the k neighbour
masses are fused by Dempster's rule. Probabilities come from the
pignistic transform, so this kind also serves probability-based measures.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidRequestError
from ..evidential import MAX_FRAME, MassFunction, combine_all, make_mass, pignistic
from .base import MASS_FUNCTION, PROBABILITY, ClassifierSpec, FittedModel


def _mean_squared_pair_distance(points: np.ndarray) -> float:
    # mean over unordered pairs equals 2*sum(||z - mean||^2)/(m-1)
    m = points.shape[0]
    centered = points - points.mean(axis=0)
    return float(2.0 * (centered ** 2).sum() / (m - 1))


class EvidentialKnnModel(FittedModel):
    kind = "evidential_knn"
    capabilities = frozenset({PROBABILITY, MASS_FUNCTION})

    def __init__(self, spec: ClassifierSpec, points: np.ndarray, y: np.ndarray,
                 class_names: list[str]):
        super().__init__(spec, points, y, class_names)
        hp = spec.hyperparams
        self.k = hp["k"]
        self.alpha0 = hp["alpha0"]
        if self.k > self.n_train:
            raise InvalidRequestError(
                f"k={self.k} exceeds the {self.n_train} training points")
        if self.n_classes > MAX_FRAME:
            raise InvalidRequestError(
                f"evidential_knn supports at most {MAX_FRAME} "
                f"classes, dataset has {self.n_classes}")
        self._points = points.astype(np.float64, copy=True)
        self._y = y.astype(np.int64, copy=True)
        fixed_gamma = hp.get("gamma")
        if fixed_gamma is not None:
            self.gammas = np.full(self.n_classes, float(fixed_gamma))
        else:
            # scale-free default: inverse mean squared within-class distance
            global_msd = _mean_squared_pair_distance(self._points)
            gammas = np.empty(self.n_classes)
            for c in range(self.n_classes):
                rows = self._points[self._y == c]
                msd = _mean_squared_pair_distance(rows) if rows.shape[0] >= 2 \
                    else global_msd
                gammas[c] = 1.0 / (msd + 1e-12)
            self.gammas = gammas

    def mass_function(self, q) -> MassFunction:
        q = self._query(q)
        d2 = ((self._points - q) ** 2).sum(axis=1)
        idx = np.argsort(d2, kind="stable")[: self.k]
        omega = (1 << self.n_classes) - 1
        parts = []
        for i in idx:
            c = int(self._y[i])
            support = self.alpha0 * float(np.exp(-self.gammas[c] * d2[i]))
            parts.append(make_mass(self.n_classes,
                                   {1 << c: support, omega: 1.0 - support}))
        return combine_all(parts, self.n_classes)

    def predict_proba(self, q) -> np.ndarray:
        return pignistic(self.mass_function(q))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "class_names": self.class_names,
            "k": self.k,
            "alpha0": self.alpha0,
            "gammas": self.gammas.tolist(),
            "points": self._points.tolist(),
            "labels": self._y.tolist(),
        }
