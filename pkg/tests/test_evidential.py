from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uncmap.errors import InvalidRequestError, TotalConflictError
from uncmap.evidential import (
    combine_all,
    dempster_combine,
    make_mass,
    pignistic,
    vacuous,
)


def random_mass(rng, frame_size: int, n_focal: int | None = None):
    """Random valid mass function; keeps some mass on the full frame so
    random pairs are never totally conflicting."""
    omega = (1 << frame_size) - 1
    subsets = rng.choice(np.arange(1, omega + 1),
                         size=n_focal or rng.integers(1, 5), replace=False)
    subsets = sorted(set(int(s) for s in subsets) | {omega})
    weights = rng.random(len(subsets)) + 1e-3
    weights /= weights.sum()
    return make_mass(frame_size, {s: float(w) for s, w in zip(subsets, weights)})


@st.composite
def mass_functions(draw, frame_size=3):
    omega = (1 << frame_size) - 1
    n = draw(st.integers(1, 4))
    subsets = draw(st.lists(st.integers(1, omega), min_size=n, max_size=n,
                            unique=True))
    raw = draw(st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n))
    total = sum(raw)
    return make_mass(frame_size, {s: w / total for s, w in zip(subsets, raw)})


class TestDempsterCombine:
    def test_vacuous_is_neutral(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            b = random_mass(rng, 3)
            combined = dempster_combine(vacuous(3), b)
            assert combined.focal.keys() == b.focal.keys()
            for s, m in b.items():
                assert combined.mass(s) == pytest.approx(m, abs=1e-12)

    def test_hand_expanded_self_combination(self):
        # product terms: 0.95^2 on {0}; 2*0.95*0.05 on {0}; 0.05^2 on omega
        a = make_mass(2, {0b01: 0.95, 0b11: 0.05})
        c = dempster_combine(a, a)
        assert c.mass(0b01) == pytest.approx(0.9975, abs=1e-12)
        assert c.mass(0b11) == pytest.approx(0.0025, abs=1e-12)

    def test_total_conflict_is_an_error(self):
        a = make_mass(2, {0b01: 1.0})
        b = make_mass(2, {0b10: 1.0})
        with pytest.raises(TotalConflictError):
            dempster_combine(a, b)

    def test_frame_mismatch(self):
        with pytest.raises(InvalidRequestError):
            dempster_combine(vacuous(2), vacuous(3))

    def test_commutative_and_associative(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a, b, c = (random_mass(rng, 3) for _ in range(3))
            ab = dempster_combine(a, b)
            ba = dempster_combine(b, a)
            for s in set(ab.focal) | set(ba.focal):
                assert ab.mass(s) == pytest.approx(ba.mass(s), abs=1e-9)
            left = dempster_combine(ab, c)
            right = dempster_combine(a, dempster_combine(b, c))
            for s in set(left.focal) | set(right.focal):
                assert left.mass(s) == pytest.approx(right.mass(s), abs=1e-9)

    @given(mass_functions(), mass_functions())
    @settings(max_examples=100, deadline=None)
    def test_masses_stay_normalized(self, a, b):
        try:
            c = dempster_combine(a, b)
        except TotalConflictError:
            return
        assert sum(c.focal.values()) == pytest.approx(1.0, abs=1e-9)
        assert all(m >= 1e-12 for m in c.focal.values())
        assert 0 not in c.focal


class TestPignistic:
    def test_vacuous_is_uniform(self):
        assert pignistic(vacuous(3)) == pytest.approx([1 / 3] * 3)

    def test_bayesian_identity(self):
        m = make_mass(3, {0b001: 0.2, 0b010: 0.3, 0b100: 0.5})
        assert pignistic(m) == pytest.approx([0.2, 0.3, 0.5])

    def test_pair_mass_split_equally(self):
        m = make_mass(3, {0b011: 0.6, 0b100: 0.4})
        assert pignistic(m) == pytest.approx([0.3, 0.3, 0.4])

    @given(mass_functions())
    @settings(max_examples=100, deadline=None)
    def test_always_a_probability_vector(self, m):
        p = pignistic(m)
        assert p.sum() == pytest.approx(1.0, abs=1e-9)
        assert np.all(p >= 0)


class TestMakeMass:
    def test_empty_set_rejected(self):
        with pytest.raises(InvalidRequestError):
            make_mass(2, {0: 0.5, 0b11: 0.5})

    def test_tiny_masses_pruned(self):
        m = make_mass(2, {0b01: 1e-15, 0b11: 1.0 - 1e-15})
        assert 0b01 not in m.focal

    def test_frame_cap(self):
        with pytest.raises(InvalidRequestError):
            make_mass(31, {1: 1.0})

    def test_combine_all_empty_is_vacuous(self):
        m = combine_all([], 4)
        assert m.focal == {0b1111: 1.0}
