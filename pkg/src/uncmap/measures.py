"""Uncertainty measures and their registry.

Probability measures consume a probability vector; the two decompositions
consume neighbor counts / ensemble members; the evidential measures
consume a mass function. All outputs are raw (bits or unitless), display
normalization happens in the grid evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .classifiers.base import (
    ENSEMBLE_MEMBERS,
    LOCAL_COUNTS,
    MASS_FUNCTION,
    PROBABILITY,
    FittedModel,
)
from .errors import MeasureNotFoundError
from .evidential import MassFunction

# ---------------------------------------------------------------------------
# probability-based measures


def entropy(p: np.ndarray) -> float:
    """Shannon entropy in bits, with 0*log(0) = 0."""
    p = np.asarray(p, dtype=np.float64)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def gini(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=np.float64)
    return float(1.0 - (p * p).sum())


def least_confident(p: np.ndarray) -> float:
    return float(1.0 - np.max(p))


def margin(p: np.ndarray) -> float:
    """1 minus the gap between the two largest entries; higher = less sure."""
    top2 = np.partition(np.asarray(p, dtype=np.float64), -2)[-2:]
    return float(1.0 - (top2[1] - top2[0]))


# ---------------------------------------------------------------------------
# relative-likelihood decomposition (binary, majority class vs rest)


def _log_rel_likelihood(theta: np.ndarray, s: int, f: int) -> np.ndarray:
    """log of theta^s (1-theta)^f normalized by its maximum at s/(s+f)."""
    theta_hat = s / (s + f)
    log_norm = 0.0
    if s > 0:
        log_norm += s * math.log(theta_hat)
    if f > 0:
        log_norm += f * math.log(1.0 - theta_hat)
    out = np.full_like(theta, -np.inf)
    interior = (theta > 0.0) & (theta < 1.0)
    t = theta[interior]
    out[interior] = s * np.log(t) + f * np.log1p(-t) - log_norm
    # boundary values by limits: theta^s at 0 is 0 unless s == 0
    out[theta == 0.0] = -np.inf if s > 0 else 0.0 - log_norm
    out[theta == 1.0] = -np.inf if f > 0 else 0.0 - log_norm
    return out


def _sup_min(s: int, f: int, plus: bool) -> float:
    """sup over theta of min(rel-likelihood, 2*theta-1 or 1-2*theta).

    1025-point scan, then 40 bisection steps on the bracketing interval.
    The minimum of a unimodal likelihood and a monotone line is unimodal,
    so the bracket around the best scan point contains the supremum.
    """
    grid = np.linspace(0.0, 1.0, 1025)
    ell = np.exp(_log_rel_likelihood(grid, s, f))
    line = 2.0 * grid - 1.0 if plus else 1.0 - 2.0 * grid
    g = np.minimum(ell, line)
    i = int(np.argmax(g))
    best = float(g[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]

    def ell_at(t: float) -> float:
        return float(np.exp(_log_rel_likelihood(np.array([t]), s, f))[0])

    def line_at(t: float) -> float:
        return 2.0 * t - 1.0 if plus else 1.0 - 2.0 * t

    def h(t: float) -> float:
        return ell_at(t) - line_at(t)

    h_lo, h_hi = h(lo), h(hi)
    if h_lo == 0.0:
        return max(best, line_at(lo))
    if h_hi == 0.0:
        return max(best, line_at(hi))
    if (h_lo > 0) != (h_hi > 0):
        # the sup sits where the two curves cross; bisect the crossing
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            if (h(mid) > 0) == (h_lo > 0):
                lo = mid
            else:
                hi = mid
        t = 0.5 * (lo + hi)
        return max(best, min(ell_at(t), line_at(t)))
    # no crossing inside the bracket: trisect the unimodal objective
    def g_at(t: float) -> float:
        return min(ell_at(t), line_at(t))

    for _ in range(40):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if g_at(m1) < g_at(m2):
            lo = m1
        else:
            hi = m2
    t = 0.5 * (lo + hi)
    return max(best, g_at(t))


@dataclass(frozen=True)
class SupportPair:
    pi_plus: float
    pi_minus: float


@lru_cache(maxsize=4096)
def _rl_from_sf(s: int, f: int) -> tuple[float, float, float, float]:
    if s + f == 0:
        return 1.0, 0.0, 1.0, 1.0
    pi_plus = _sup_min(s, f, plus=True)
    pi_minus = _sup_min(s, f, plus=False)
    epistemic = min(pi_plus, pi_minus)
    aleatoric = 1.0 - max(pi_plus, pi_minus)
    return epistemic, aleatoric, pi_plus, pi_minus


def rl_decomposition(counts: np.ndarray) -> tuple[float, float, SupportPair]:
    """Epistemic/aleatoric split from local class counts.

    Multi-class counts reduce to binary as majority class (ties to the
    lowest index) versus the rest: s successes, f failures.
    """
    counts = np.asarray(counts)
    c = int(np.argmax(counts))
    s = int(counts[c])
    f = int(counts.sum()) - s
    epistemic, aleatoric, pi_plus, pi_minus = _rl_from_sf(s, f)
    return epistemic, aleatoric, SupportPair(pi_plus=pi_plus, pi_minus=pi_minus)


# ---------------------------------------------------------------------------
# ensemble entropy decomposition


def ensemble_decomposition(members: np.ndarray) -> tuple[float, float, float]:
    """total = entropy(mean), aleatoric = mean entropy, epistemic = gap.

    The gap is non-negative by Jensen; tiny negative float residue is
    clamped to zero.
    """
    members = np.asarray(members, dtype=np.float64)
    if np.all(members == members[0]):
        # Jensen equality, kept exact instead of accumulating mean noise
        e = entropy(members[0])
        return e, e, 0.0
    total = entropy(members.mean(axis=0))
    aleatoric = float(np.mean([entropy(m) for m in members]))
    epistemic = total - aleatoric
    if epistemic < -1e-9:
        raise AssertionError(
            f"ensemble epistemic gap {epistemic} below -1e-9; invalid members")
    return total, aleatoric, max(epistemic, 0.0)


# ---------------------------------------------------------------------------
# evidential measures


def nonspecificity(m: MassFunction) -> float:
    """Imprecision content: sum of m(A) * log2 |A|, in bits."""
    return float(sum(mass * math.log2(int(a).bit_count())
                     for a, mass in m.items()))


def discord(m: MassFunction) -> float:
    """Klir-Parviz discord: -sum m(A) log2 sum m(B) |A∩B| / |B|."""
    total = 0.0
    for a, ma in m.items():
        inner = 0.0
        for b, mb in m.items():
            inter = int(a & b).bit_count()
            if inter:
                inner += mb * inter / int(b).bit_count()
        total -= ma * math.log2(inner)
    return total


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class MeasureDescriptor:
    id: str
    display_name: str
    required_capability: str
    components: tuple[str, ...]
    reference: str


REGISTRY: tuple[MeasureDescriptor, ...] = (
    MeasureDescriptor(
        id="entropy",
        display_name="Shannon entropy",
        required_capability=PROBABILITY,
        components=("total",),
        reference="C. E. Shannon. A mathematical theory of communication. "
                  "Bell System Technical Journal 27:379-423, 1948.",
    ),
    MeasureDescriptor(
        id="gini",
        display_name="Gini impurity",
        required_capability=PROBABILITY,
        components=("total",),
        reference="L. Breiman, J. Friedman, R. Olshen, C. Stone. "
                  "Classification and Regression Trees. Wadsworth, 1984.",
    ),
    MeasureDescriptor(
        id="least_confident",
        display_name="least confident",
        required_capability=PROBABILITY,
        components=("total",),
        reference="D. D. Lewis and W. A. Gale. A sequential algorithm for "
                  "training text classifiers. SIGIR, 1994.",
    ),
    MeasureDescriptor(
        id="margin",
        display_name="margin (complement)",
        required_capability=PROBABILITY,
        components=("total",),
        reference="T. Scheffer, C. Decomain, S. Wrobel. Active hidden Markov "
                  "models for information extraction. IDA, 2001.",
    ),
    MeasureDescriptor(
        id="rl_decomposition",
        display_name="relative-likelihood decomposition",
        required_capability=LOCAL_COUNTS,
        components=("epistemic", "aleatoric"),
        reference="R. Senge, S. Boesner, K. Dembczynski, J. Haasenritter, "
                  "O. Hirsch, N. Donner-Banzhoff, E. Huellermeier. Reliable "
                  "classification: learning classifiers that distinguish "
                  "aleatoric and epistemic uncertainty. Information Sciences "
                  "255:16-29, 2014.",
    ),
    MeasureDescriptor(
        id="ensemble_decomposition",
        display_name="ensemble entropy decomposition",
        required_capability=ENSEMBLE_MEMBERS,
        components=("total", "aleatoric", "epistemic"),
        reference="S. Depeweg, J. M. Hernandez-Lobato, F. Doshi-Velez, "
                  "S. Udluft. Decomposition of uncertainty in Bayesian deep "
                  "learning for efficient and risk-sensitive learning. ICML, 2018.",
    ),
    MeasureDescriptor(
        id="nonspecificity",
        display_name="non-specificity",
        required_capability=MASS_FUNCTION,
        components=("total",),
        reference="G. J. Klir and M. J. Wierman. Uncertainty-Based "
                  "Information: Elements of Generalized Information Theory. "
                  "Physica-Verlag, 1999.",
    ),
    MeasureDescriptor(
        id="discord",
        display_name="discord (Klir-Parviz)",
        required_capability=MASS_FUNCTION,
        components=("total",),
        reference="G. J. Klir and B. Parviz. A note on the measure of "
                  "discord. Uncertainty in Artificial Intelligence, 1992.",
    ),
)

_BY_ID = {d.id: d for d in REGISTRY}


def registry() -> list[MeasureDescriptor]:
    return list(REGISTRY)


def get_measure(measure_id: str) -> MeasureDescriptor:
    desc = _BY_ID.get(measure_id)
    if desc is None:
        raise MeasureNotFoundError(measure_id)
    return desc


def evaluate_at(model: FittedModel, desc: MeasureDescriptor, q) -> tuple[float, ...]:
    """Component values of a measure for one query point."""
    cap = desc.required_capability
    if cap == PROBABILITY:
        p = model.predict_proba(q)
        fn = {"entropy": entropy, "gini": gini,
              "least_confident": least_confident, "margin": margin}[desc.id]
        return (fn(p),)
    if cap == LOCAL_COUNTS:
        epistemic, aleatoric, _ = rl_decomposition(model.local_counts(q))
        return (epistemic, aleatoric)
    if cap == ENSEMBLE_MEMBERS:
        return ensemble_decomposition(model.ensemble_members(q))
    if cap == MASS_FUNCTION:
        fn = {"nonspecificity": nonspecificity, "discord": discord}[desc.id]
        return (fn(model.mass_function(q)),)
    raise MeasureNotFoundError(desc.id)
