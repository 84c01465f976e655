"""Shared classifier interface: specs, capabilities, hyperparameter schemas.

Each model kind declares a fixed capability set; uncertainty measures
declare the capability they need, and the pairing is checked loudly
instead of silently falling back.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import CapabilityError, InvalidRequestError

PROBABILITY = "probability"
ENSEMBLE_MEMBERS = "ensemble_members"
LOCAL_COUNTS = "local_counts"
MASS_FUNCTION = "mass_function"


@dataclass(frozen=True)
class HyperparamDef:
    name: str
    type: str              # "int" or "float"
    default: int | float | None
    min: float | None = None
    max: float | None = None
    min_exclusive: bool = False
    max_exclusive: bool = False
    description: str = ""

    def coerce(self, value) -> int | float:
        if self.type == "int":
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise InvalidRequestError(
                    f"hyperparameter {self.name!r} must be an integer, got {value!r}")
            try:
                out: int | float = int(value)
            except (TypeError, ValueError):
                raise InvalidRequestError(
                    f"hyperparameter {self.name!r} must be an integer, got {value!r}") from None
        else:
            try:
                out = float(value)
            except (TypeError, ValueError):
                raise InvalidRequestError(
                    f"hyperparameter {self.name!r} must be a number, got {value!r}") from None
        if self.min is not None:
            if out < self.min or (self.min_exclusive and out == self.min):
                raise InvalidRequestError(
                    f"hyperparameter {self.name!r}={out} below allowed minimum "
                    f"{'(exclusive) ' if self.min_exclusive else ''}{self.min}")
        if self.max is not None:
            if out > self.max or (self.max_exclusive and out == self.max):
                raise InvalidRequestError(
                    f"hyperparameter {self.name!r}={out} above allowed maximum "
                    f"{'(exclusive) ' if self.max_exclusive else ''}{self.max}")
        return out


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    hyperparams: dict = field(default_factory=dict)

    def cache_token(self) -> tuple:
        return (self.kind, tuple(sorted(self.hyperparams.items())))


class FittedModel:
    """Immutable fitted classifier; prediction methods are pure.

    Subclasses fill in ``kind``, ``capabilities`` and the prediction
    methods matching their declared capabilities.
    """

    kind: str = "?"
    capabilities: frozenset[str] = frozenset()

    def __init__(self, spec: ClassifierSpec, points: np.ndarray, y: np.ndarray,
                 class_names: list[str]):
        self.spec = spec
        self.n_train = int(points.shape[0])
        self.n_classes = len(class_names)
        self.class_names = list(class_names)

    # -- capability surface -------------------------------------------------
    def predict_proba(self, q) -> np.ndarray:
        raise CapabilityError(PROBABILITY, self.kind, set(self.capabilities))

    def local_counts(self, q) -> np.ndarray:
        raise CapabilityError(LOCAL_COUNTS, self.kind, set(self.capabilities))

    def ensemble_members(self, q) -> np.ndarray:
        raise CapabilityError(ENSEMBLE_MEMBERS, self.kind, set(self.capabilities))

    def mass_function(self, q):
        raise CapabilityError(MASS_FUNCTION, self.kind, set(self.capabilities))

    def to_dict(self) -> dict:
        raise NotImplementedError

    # -- helpers -------------------------------------------------------------
    @staticmethod
    def _query(q) -> np.ndarray:
        q = np.asarray(q, dtype=np.float64)
        if q.shape != (2,):
            raise InvalidRequestError(f"query must be a 2D point, got shape {q.shape}")
        if not np.all(np.isfinite(q)):
            raise InvalidRequestError(f"non-finite query point {q.tolist()}")
        return q


def validate_training_data(P: np.ndarray, y: np.ndarray,
                           class_names: list[str]) -> None:
    if P.ndim != 2 or P.shape[1] != 2:
        raise InvalidRequestError(f"training points must be Nx2, got {P.shape}")
    if not np.all(np.isfinite(P)):
        raise InvalidRequestError("training points contain non-finite values")
    n, k = P.shape[0], len(class_names)
    if len(np.unique(y)) < 2:
        raise InvalidRequestError(
            "training data has a single class; uncertainty maps over one "
            "class are meaningless")
    if n < k:
        raise InvalidRequestError(
            f"need at least as many samples ({n}) as classes ({k})")
