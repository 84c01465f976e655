"""One-vs-rest RBF-kernel SVM trained by seeded kernelized Pegasos.

Objective per head: (1/(2C))·||f||² + mean hinge loss. The mean-hinge
form makes the optimum invariant to duplicating the whole training set
(a weighting symmetry the tests check). Class scores are calibrated to
probabilities by a plain softmax over decision values, not Platt scaling.
"""

from __future__ import annotations

import numpy as np

from ..utils import derived_seed
from .base import PROBABILITY, ClassifierSpec, FittedModel


def _rbf(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
    return np.exp(-gamma * d2)


def _pegasos_counts(K: np.ndarray, targets: np.ndarray, lam: float,
                    epochs: int, rng: np.random.Generator) -> np.ndarray:
    """Kernelized Pegasos; alpha[i] counts margin violations at point i."""
    n = K.shape[0]
    alpha = np.zeros(n)
    at = alpha * targets
    step = 0
    for _ in range(epochs):
        for i in rng.permutation(n):
            step += 1
            margin = targets[i] * (at @ K[:, i]) / (lam * step)
            if margin < 1.0:
                alpha[i] += 1.0
                at[i] = alpha[i] * targets[i]
    return alpha / (lam * step)


class KernelSvmModel(FittedModel):
    kind = "svm"
    capabilities = frozenset({PROBABILITY})

    def __init__(self, spec: ClassifierSpec, points: np.ndarray, y: np.ndarray,
                 class_names: list[str]):
        super().__init__(spec, points, y, class_names)
        hp = spec.hyperparams
        self.C = hp["C"]
        self.gamma = hp["gamma"]
        self.epochs = hp["epochs"]
        self.seed = hp["seed"]
        self._points = points.astype(np.float64, copy=True)
        lam = 1.0 / self.C
        K = _rbf(self._points, self._points, self.gamma)
        coefs = []
        for c in range(self.n_classes):
            targets = np.where(y == c, 1.0, -1.0)
            rng = np.random.default_rng(derived_seed(self.seed, c))
            scaled = _pegasos_counts(K, targets, lam, self.epochs, rng)
            coefs.append(scaled * targets)
        self._coef = np.stack(coefs)   # n_classes x n_train

    def decision_values(self, q) -> np.ndarray:
        q = self._query(q)
        kvec = np.exp(-self.gamma * ((self._points - q) ** 2).sum(axis=1))
        return self._coef @ kvec

    def predict_proba(self, q) -> np.ndarray:
        scores = self.decision_values(q)
        scores -= scores.max()
        w = np.exp(scores)
        return w / w.sum()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "class_names": self.class_names,
            "C": self.C,
            "gamma": self.gamma,
            "epochs": self.epochs,
            "seed": self.seed,
            "points": self._points.tolist(),
            "dual_coef": self._coef.tolist(),
        }
