"""Mass functions over the class frame and Dempster's combination rule.

Focal sets are encoded as bitsets over class indices (bit k = class k),
which caps the frame at 30 classes; plenty for visual datasets and it
keeps the algebra exact and fast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidRequestError, TotalConflictError

MAX_FRAME = 30
PRUNE_EPS = 1e-12
CONFLICT_EPS = 1e-12


@dataclass(frozen=True)
class MassFunction:
    frame_size: int
    focal: dict[int, float]   # bitset -> mass; no empty set, pruned, sums to 1

    def mass(self, subset: int) -> float:
        return self.focal.get(subset, 0.0)

    @property
    def omega(self) -> int:
        return (1 << self.frame_size) - 1

    def items(self):
        return self.focal.items()


def make_mass(frame_size: int, focal: dict[int, float]) -> MassFunction:
    """Validate, prune tiny masses, renormalize, freeze."""
    if not (2 <= frame_size <= MAX_FRAME):
        raise InvalidRequestError(
            f"frame size must be in [2, {MAX_FRAME}], got {frame_size}")
    omega = (1 << frame_size) - 1
    cleaned: dict[int, float] = {}
    for subset, m in focal.items():
        if subset == 0:
            raise InvalidRequestError("empty set cannot carry mass")
        if not 0 < subset <= omega:
            raise InvalidRequestError(f"focal set {subset:b} outside the frame")
        if m < 0:
            raise InvalidRequestError(f"negative mass {m} on {subset:b}")
        if m >= PRUNE_EPS:
            cleaned[subset] = cleaned.get(subset, 0.0) + m
    total = sum(cleaned.values())
    if abs(total - 1.0) > 1e-9:
        if total <= 0:
            raise InvalidRequestError("mass function has no support")
        cleaned = {s: m / total for s, m in cleaned.items()}
    return MassFunction(frame_size=frame_size, focal=cleaned)


def vacuous(frame_size: int) -> MassFunction:
    return make_mass(frame_size, {(1 << frame_size) - 1: 1.0})


def dempster_combine(a: MassFunction, b: MassFunction) -> MassFunction:
    """Conjunctive combination with conflict renormalization.

    Mass on C is sum over A∩B=C of a(A)b(B); the empty-set mass (conflict
    kappa) is removed and the rest rescaled by 1/(1-kappa).
    """
    if a.frame_size != b.frame_size:
        raise InvalidRequestError(
            f"frame sizes differ: {a.frame_size} vs {b.frame_size}")
    combined: dict[int, float] = {}
    conflict = 0.0
    for sa, ma in a.items():
        for sb, mb in b.items():
            inter = sa & sb
            w = ma * mb
            if inter == 0:
                conflict += w
            else:
                combined[inter] = combined.get(inter, 0.0) + w
    remainder = 1.0 - conflict
    if remainder <= CONFLICT_EPS:
        raise TotalConflictError(
            "total conflict: the evidence is fully contradictory")
    scaled = {s: m / remainder for s, m in combined.items()}
    return make_mass(a.frame_size, scaled)


def combine_all(masses: list[MassFunction], frame_size: int) -> MassFunction:
    """Fold dempster_combine over a list; empty list gives the vacuous mass."""
    out = vacuous(frame_size)
    for m in masses:
        out = dempster_combine(out, m)
    return out


def pignistic(m: MassFunction) -> np.ndarray:
    """BetP(k) = sum over focal A containing k of m(A)/|A|."""
    p = np.zeros(m.frame_size)
    for subset, mass in m.items():
        size = int(subset).bit_count()
        share = mass / size
        s = subset
        while s:
            low = s & -s
            p[low.bit_length() - 1] += share
            s ^= low
    return p
