from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uncmap.errors import MeasureNotFoundError
from uncmap.evidential import make_mass, pignistic, vacuous
from uncmap.measures import (
    REGISTRY,
    discord,
    ensemble_decomposition,
    entropy,
    get_measure,
    gini,
    least_confident,
    margin,
    nonspecificity,
    registry,
    rl_decomposition,
)

from oracles import rl_grid_search


@st.composite
def prob_vectors(draw, max_k=6):
    k = draw(st.integers(2, max_k))
    raw = draw(st.lists(st.floats(0.0, 1.0), min_size=k, max_size=k))
    total = sum(raw)
    if total == 0:
        return np.full(k, 1.0 / k)
    return np.array(raw) / total


class TestProbabilityMeasures:
    @pytest.mark.parametrize("p,expected", [
        ([1, 0, 0], 0.0),
        ([1 / 3, 1 / 3, 1 / 3], math.log2(3)),
        ([0.5, 0.25, 0.25], 1.5),
    ])
    def test_entropy_closed_forms(self, p, expected):
        assert entropy(np.array(p)) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("p,expected", [
        ([1, 0], 0.0),
        ([0.5, 0.5], 0.5),
        ([1 / 3, 1 / 3, 1 / 3], 2 / 3),
    ])
    def test_gini_closed_forms(self, p, expected):
        assert gini(np.array(p)) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("p,expected", [
        ([1, 0, 0], 0.0),
        ([0.25, 0.25, 0.25, 0.25], 0.75),
        ([0.6, 0.3, 0.1], 0.4),
    ])
    def test_least_confident_closed_forms(self, p, expected):
        assert least_confident(np.array(p)) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("p,expected", [
        ([1, 0], 0.0),
        ([0.5, 0.5], 1.0),
        ([0.5, 0.3, 0.2], 0.8),
    ])
    def test_margin_closed_forms(self, p, expected):
        assert margin(np.array(p)) == pytest.approx(expected, abs=1e-12)

    @given(prob_vectors())
    @settings(max_examples=200, deadline=None)
    def test_permutation_invariance(self, p):
        rng = np.random.default_rng(0)
        sigma = rng.permutation(len(p))
        for fn in (entropy, gini, least_confident, margin):
            assert fn(p) == pytest.approx(fn(p[sigma]), abs=1e-12)

    def test_maxima_on_uniform(self):
        for k in (2, 3, 5):
            u = np.full(k, 1.0 / k)
            assert entropy(u) == pytest.approx(math.log2(k), abs=1e-12)
            assert gini(u) == pytest.approx(1 - 1 / k, abs=1e-12)
            assert least_confident(u) == pytest.approx(1 - 1 / k, abs=1e-12)
            assert margin(u) == pytest.approx(1.0, abs=1e-12)


class TestRlDecomposition:
    def test_no_data_limit(self):
        epistemic, aleatoric, support = rl_decomposition(np.array([0, 0]))
        assert (epistemic, aleatoric) == (1.0, 0.0)
        assert support.pi_plus == 1.0 and support.pi_minus == 1.0

    def test_single_success_against_oracle(self):
        # oracle: dense grid search over theta; crossing of min(theta, 1-2theta)
        oracle_e, oracle_a = rl_grid_search(1, 0)
        assert oracle_e == pytest.approx(1 / 3, abs=2e-6)
        epistemic, aleatoric, support = rl_decomposition(np.array([1, 0]))
        assert epistemic == pytest.approx(oracle_e, abs=1e-4)
        assert aleatoric == pytest.approx(oracle_a, abs=1e-4)
        assert support.pi_plus == pytest.approx(1.0, abs=1e-6)
        assert support.pi_minus == pytest.approx(1 / 3, abs=1e-6)

    def test_balanced_counts_against_oracle(self):
        oracle_e, oracle_a = rl_grid_search(2, 2)
        assert oracle_e == pytest.approx(0.52, abs=0.01)
        assert oracle_a == pytest.approx(0.48, abs=0.01)
        epistemic, aleatoric, _ = rl_decomposition(np.array([2, 2]))
        assert epistemic == pytest.approx(oracle_e, abs=1e-4)
        assert aleatoric == pytest.approx(oracle_a, abs=1e-4)

    @pytest.mark.parametrize("s,f", [(3, 1), (5, 0), (0, 4), (7, 2), (10, 10), (1, 1)])
    def test_sweep_against_oracle(self, s, f):
        counts = np.array([s, f])
        epistemic, aleatoric, _ = rl_decomposition(counts)
        oracle_e, oracle_a = rl_grid_search(s, f)
        assert epistemic == pytest.approx(oracle_e, abs=1e-4)
        assert aleatoric == pytest.approx(oracle_a, abs=1e-4)

    def test_epistemic_decreases_with_evidence(self):
        values = [rl_decomposition(np.array([s, s]))[0] for s in (1, 2, 4, 8)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_sum_bounded(self):
        for s in range(0, 8):
            for f in range(0, 8):
                e, a, _ = rl_decomposition(np.array([s, f]))
                assert e + a <= 1.0 + 1e-6

    def test_multiclass_reduces_to_majority_vs_rest(self):
        # majority class has 3 of 6 neighbors -> s=3, f=3
        a = rl_decomposition(np.array([3, 2, 1]))
        b = rl_decomposition(np.array([3, 3]))
        assert a[:2] == pytest.approx(b[:2], abs=1e-12)

    def test_majority_tie_uses_lowest_index(self):
        a = rl_decomposition(np.array([2, 2, 0]))
        b = rl_decomposition(np.array([2, 2]))
        assert a[:2] == pytest.approx(b[:2], abs=1e-12)


class TestEnsembleDecomposition:
    def test_identical_members_have_zero_epistemic(self):
        members = np.tile([0.2, 0.5, 0.3], (7, 1))
        total, aleatoric, epistemic = ensemble_decomposition(members)
        assert epistemic == 0.0
        assert total == pytest.approx(aleatoric, abs=1e-12)

    def test_maximal_disagreement(self):
        total, aleatoric, epistemic = ensemble_decomposition(
            np.array([[1.0, 0.0], [0.0, 1.0]]))
        assert (total, aleatoric, epistemic) == (1.0, 0.0, 1.0)

    def test_random_members_identity_and_jensen(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            m = rng.integers(2, 9)
            k = rng.integers(2, 5)
            members = rng.dirichlet(np.ones(k), size=m)
            total, aleatoric, epistemic = ensemble_decomposition(members)
            assert epistemic >= 0.0
            assert total == pytest.approx(aleatoric + epistemic, abs=1e-12)


class TestEvidentialMeasures:
    def test_nonspecificity_bayesian_is_zero(self):
        m = make_mass(3, {0b001: 0.2, 0b010: 0.3, 0b100: 0.5})
        assert nonspecificity(m) == 0.0

    def test_nonspecificity_vacuous_is_log2k(self):
        assert nonspecificity(vacuous(3)) == pytest.approx(math.log2(3), abs=1e-12)

    def test_nonspecificity_half_pair(self):
        m = make_mass(3, {0b011: 0.5, 0b001: 0.5})
        assert nonspecificity(m) == pytest.approx(0.5, abs=1e-12)

    def test_discord_vacuous_is_zero(self):
        assert discord(vacuous(4)) == 0.0

    def test_discord_uniform_bayesian_pair(self):
        m = make_mass(2, {0b01: 0.5, 0b10: 0.5})
        assert discord(m) == pytest.approx(1.0, abs=1e-12)

    def test_discord_equals_entropy_on_bayesian_masses(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            k = rng.integers(2, 6)
            p = rng.dirichlet(np.ones(k))
            m = make_mass(int(k), {1 << i: float(p[i]) for i in range(k)})
            assert discord(m) == pytest.approx(entropy(pignistic(m)), abs=1e-9)

    def test_total_ignorance_split(self):
        for k in (2, 3, 7):
            v = vacuous(k)
            assert nonspecificity(v) == pytest.approx(math.log2(k), abs=1e-12)
            assert discord(v) == 0.0


class TestRegistry:
    def test_stable_order_and_capabilities(self):
        descs = registry()
        assert [d.id for d in descs] == [
            "entropy", "gini", "least_confident", "margin",
            "rl_decomposition", "ensemble_decomposition",
            "nonspecificity", "discord"]
        caps = {d.id: d.required_capability for d in descs}
        assert caps["entropy"] == caps["gini"] == caps["least_confident"] \
            == caps["margin"] == "probability"
        assert caps["rl_decomposition"] == "local_counts"
        assert caps["ensemble_decomposition"] == "ensemble_members"
        assert caps["nonspecificity"] == caps["discord"] == "mass_function"

    def test_references_present(self):
        assert all(d.reference for d in REGISTRY)
        assert "1948" in get_measure("entropy").reference
        assert "Shannon" in get_measure("entropy").reference

    def test_ids_unique_and_components_nonempty(self):
        ids = [d.id for d in REGISTRY]
        assert len(set(ids)) == len(ids)
        assert all(d.components for d in REGISTRY)

    def test_component_names(self):
        assert get_measure("rl_decomposition").components == ("epistemic", "aleatoric")
        assert get_measure("ensemble_decomposition").components == (
            "total", "aleatoric", "epistemic")

    def test_unknown_measure(self):
        with pytest.raises(MeasureNotFoundError):
            get_measure("nope")
