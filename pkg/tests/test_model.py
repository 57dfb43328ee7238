import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from perceptlet import (BasisId, ModelFormatError, PerceptionDomainError, PerceptionModel,
                        Perceptlet, basis_count, bases_up_to, evaluate, from_perception_space,
                        full_model, level_difference, range_violations, realize_all_levels,
                        resolution_for, to_perception_space, truncate)
from perceptlet.model import model_from_dict, model_to_dict

LIN, SIN = Perceptlet.linear(), Perceptlet.sin()

# third-level coefficients reported for the three simulated curves
SYMMETRIC = {(1, -1): 0.8, (1, 1): 0.2, (2, 0): 0.0, (3, F(-1, 2)): -0.062, (3, F(1, 2)): 0.062}
SKEWED = {(1, -1): 0.5, (1, 1): 0.2, (2, 0): 0.35, (3, F(-1, 2)): 0.088, (3, F(1, 2)): 0.081}
SQUARE = {(1, -1): 1.0, (1, 1): 1.0, (2, 0): -1.0, (3, F(-1, 2)): -0.25, (3, F(1, 2)): -0.25}


def oracle_eval(family, weights, x, k):
    return sum(w * oracles.basis(family, lvl, float(c), x)
               for (lvl, c), w in weights.items() if lvl <= k)


def random_model(rng, perceptlet, pr):
    ws = {}
    for b in bases_up_to(pr):
        ws[b] = rng.uniform(0, 1) if b.level == 1 else rng.uniform(-1, 1)
    return PerceptionModel(perceptlet, pr, ws)


class TestEvaluate:
    def test_symmetric_boundary(self):
        m = PerceptionModel(SIN, 3, SYMMETRIC)
        assert evaluate(m, -1, 3) == pytest.approx(0.8, abs=1e-12)

    def test_symmetric_midpoint(self):
        m = PerceptionModel(SIN, 3, SYMMETRIC)
        assert evaluate(m, 0, 3) == pytest.approx(0.5, abs=1e-12)

    def test_square_fit_at_quarter(self):
        m = PerceptionModel(LIN, 3, SQUARE)
        assert evaluate(m, 0.25, 3) == pytest.approx(0.125, abs=1e-15)

    @pytest.mark.parametrize("x", np.linspace(-1, 1, 17))
    def test_against_oracle(self, x):
        for fam, weights in (("sin", SYMMETRIC), ("sin", SKEWED), ("linear", SQUARE)):
            m = PerceptionModel(Perceptlet.from_name(fam), 3, weights)
            for k in (1, 2, 3):
                assert evaluate(m, x, k) == pytest.approx(oracle_eval(fam, weights, x, k), abs=1e-14)

    def test_array_input(self):
        m = PerceptionModel(SIN, 3, SKEWED)
        xs = np.linspace(-1, 1, 9)
        np.testing.assert_allclose(evaluate(m, xs, 3), [evaluate(m, x, 3) for x in xs])

    def test_missing_weights_are_zero(self):
        m = PerceptionModel(LIN, 4, {(1, -1): 0.3, (1, 1): 0.7})
        assert evaluate(m, 0.1, 4) == pytest.approx(0.5 + 0.2 * 0.1)

    def test_not_clamped(self):
        m = PerceptionModel(LIN, 2, {(1, -1): 1.0, (1, 1): 1.0, (2, 0): 1.5})
        assert evaluate(m, 0, 2) == 2.5
        assert len(range_violations(m)) == 1

    @pytest.mark.parametrize("x, k", [(1.1, 1), (0, 0), (0, 4)])
    def test_errors(self, x, k):
        with pytest.raises(PerceptionDomainError):
            evaluate(PerceptionModel(LIN, 3, SQUARE), x, k)

    def test_rejects_level_above_pr(self):
        with pytest.raises(PerceptionDomainError):
            PerceptionModel(LIN, 2, SQUARE)


class TestLevels:
    def test_all_levels_symmetric(self):
        assert realize_all_levels(PerceptionModel(SIN, 3, SYMMETRIC), 0) == pytest.approx([0.5, 0.5, 0.5])

    def test_all_levels_square(self):
        assert realize_all_levels(PerceptionModel(LIN, 3, SQUARE), 0.5) == pytest.approx([1, 0.5, 0.25])

    def test_all_levels_at_left_boundary(self, rng):
        m = random_model(rng, SIN, 5)
        assert realize_all_levels(m, -1.0) == pytest.approx([m.weight(1, -1)] * 5, abs=1e-15)

    def test_difference_level_two(self):
        m = PerceptionModel(SIN, 3, SKEWED)
        assert level_difference(m, 0, 2) == 0.35

    def test_difference_skewed(self):
        assert level_difference(PerceptionModel(SIN, 3, SKEWED), 0.5, 3) == pytest.approx(0.081, abs=1e-15)

    def test_difference_vanishes_at_boundaries(self, rng):
        m = random_model(rng, LIN, 5)
        for k in range(2, 6):
            assert level_difference(m, 1.0, k) == 0.0
            assert level_difference(m, -1.0, k) == 0.0

    def test_difference_rejects_level_one(self):
        with pytest.raises(PerceptionDomainError):
            level_difference(PerceptionModel(LIN, 3, SQUARE), 0, 1)

    @pytest.mark.parametrize("pr", [2, 4, 6])
    def test_telescoping(self, rng, perceptlet, pr):
        m = random_model(rng, perceptlet, pr)
        xs = np.linspace(-1, 1, 1001)
        levels = realize_all_levels(m, xs)
        for k in range(2, pr + 1):
            np.testing.assert_allclose(levels[k - 1] - levels[k - 2], level_difference(m, xs, k),
                                       atol=1e-12, rtol=0)

    def test_level_two_from_nodal_values(self, perceptlet):
        w_lo, w_mid, w_hi = 0.2, 0.9, 0.6
        m = PerceptionModel(perceptlet, 2, {(1, -1): w_lo, (1, 1): w_hi,
                                            (2, 0): w_mid - 0.5 * (w_lo + w_hi)})
        assert evaluate(m, 0, 2) == pytest.approx(w_mid, abs=1e-15)


class TestCounts:
    @pytest.mark.parametrize("pr, n", [(1, 2), (2, 3), (3, 5), (4, 9), (5, 17), (6, 33)])
    def test_basis_count(self, pr, n):
        assert basis_count(pr) == n
        assert basis_count(pr) == len(bases_up_to(pr))

    @pytest.mark.parametrize("n, pr", [(17, 5), (3, 2), (2, 1), (1025, 11)])
    def test_resolution_for(self, n, pr):
        assert resolution_for(n) == pr

    @pytest.mark.parametrize("n", [10, 4, 1, 0])
    def test_resolution_for_rejects(self, n):
        with pytest.raises(PerceptionDomainError):
            resolution_for(n)

    @given(st.integers(1, 30))
    def test_inverse(self, pr):
        assert resolution_for(basis_count(pr)) == pr

    def test_basis_count_rejects(self):
        with pytest.raises(PerceptionDomainError):
            basis_count(0)


class TestTruncate:
    def test_zero_is_identity(self, rng):
        m = random_model(rng, SIN, 4)
        t, rep = truncate(m, 0)
        assert dict(t.weights) == dict(m.weights)
        assert rep.removed == 0 and rep.error_bound == 0

    def test_drops_fine_levels_of_symmetric(self, rng):
        ws = dict(SYMMETRIC)
        for b in bases_up_to(5):
            if b.level >= 4:
                ws[(b.level, b.center)] = rng.uniform(-0.049, 0.049)
        full = PerceptionModel(SIN, 5, ws)
        t, rep = truncate(full, 0.05)
        assert rep.removed == 12 + 1  # twelve fine weights plus the zero mid-point weight
        for key, w in SYMMETRIC.items():
            assert t.weight(*key) == w
        assert all(b.level <= 3 for b in t.weights)

    def test_single_weight(self):
        m = PerceptionModel(LIN, 2, {(1, -1): 0.5, (1, 1): 0.5, (2, 0): 0.3})
        t, rep = truncate(m, 0.5)
        assert set(t.weights) == {BasisId(1, -1), BasisId(1, 1)}
        assert rep.error_bound == pytest.approx(0.3)

    def test_keeps_level_one(self):
        m = PerceptionModel(LIN, 1, {(1, -1): 0.0, (1, 1): 0.01})
        t, _ = truncate(m, 1.0)
        assert len(t.weights) == 2

    @pytest.mark.parametrize("eps", [0.05, 0.2, 0.5])
    def test_bound_holds(self, rng, perceptlet, eps):
        m = random_model(rng, perceptlet, 6)
        t, rep = truncate(m, eps)
        xs = np.linspace(-1, 1, 1001)
        assert np.max(np.abs(evaluate(m, xs, 6) - evaluate(t, xs, 6))) <= rep.error_bound + 1e-12

    def test_negative_eps(self):
        with pytest.raises(PerceptionDomainError):
            truncate(PerceptionModel(LIN, 1, {}), -1)


class TestSpaceMapping:
    def test_zero(self):
        assert to_perception_space(0) == 0
        assert from_perception_space(0) == 0

    def test_forward_value(self):
        assert to_perception_space(1) == pytest.approx(0.761594, abs=1e-6)

    def test_inverse_at_boundary(self):
        with pytest.raises(PerceptionDomainError):
            from_perception_space(1.0)

    @given(st.floats(-5, 5))
    def test_roundtrip(self, y):
        assert from_perception_space(to_perception_space(y)) == pytest.approx(y, abs=1e-9)

    def test_inverse_matches_formula(self):
        x = 0.3
        assert from_perception_space(x) == pytest.approx(math.atanh(x), abs=1e-15)


class TestSerializationDict:
    def test_roundtrip(self, rng):
        m = random_model(rng, SIN, 5)
        back = model_from_dict(model_to_dict(m))
        assert dict(back.weights) == dict(m.weights)
        assert back.perceptlet == m.perceptlet and back.pr == 5

    def test_centers_are_exact(self):
        doc = model_to_dict(PerceptionModel(LIN, 3, SQUARE))
        centers = {(r["center_num"], r["center_den"]) for r in doc["weights"]}
        assert (-1, 2) in centers and (1, 2) in centers

    @pytest.mark.parametrize("mutate, match", [
        (lambda d: d.update(version=99), "version"),
        (lambda d: d.update(perceptlet="cubic"), "cubic"),
        (lambda d: d["weights"][0].update(center_num=1, center_den=3), "dyadic"),
        (lambda d: d["weights"][-1].update(center_num=1, center_den=4), "no basis"),
        (lambda d: d.pop("pr"), "pr"),
        (lambda d: d["weights"].append(dict(d["weights"][0])), "duplicate"),
    ])
    def test_parse_errors(self, mutate, match):
        doc = model_to_dict(PerceptionModel(LIN, 3, SQUARE))
        mutate(doc)
        with pytest.raises(ModelFormatError, match=match):
            model_from_dict(doc)

    def test_custom_not_serializable(self):
        m = PerceptionModel(Perceptlet.custom(lambda x: 0.5 * (1 + x)), 1, {})
        with pytest.raises(ModelFormatError):
            model_to_dict(m)


def test_full_model_populates_everything():
    m = full_model(LIN, 4, {(1, 1): 0.5})
    assert m.is_complete
    assert m.weight(1, 1) == 0.5 and m.weight(4, F(3, 4)) == 0.0
