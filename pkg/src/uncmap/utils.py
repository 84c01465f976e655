"""Small shared helpers."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> int:
    """One step of the splitmix64 sequence; returns the mixed output.

    Used to derive independent per-member seeds (forest trees, one-vs-rest
    SVM heads) from a single user-facing seed, so that the member at index
    i is the same no matter how many members are built.
    """
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derived_seed(seed: int, index: int) -> int:
    """Seed for the index-th member of a seeded sequence."""
    return splitmix64((seed & _MASK64) + index + 1)


def check_probability_vector(p: np.ndarray, tol: float = 1e-9) -> None:
    """Raise AssertionError if p is not a probability vector."""
    assert p.ndim == 1, f"expected 1-D vector, got shape {p.shape}"
    assert np.all(p >= 0), f"negative entries: {p}"
    s = float(p.sum())
    assert abs(s - 1.0) <= tol, f"probabilities sum to {s}, not 1"
