"""Tests for DET curve, EER, and minDCF against a brute-force sweep oracle."""

import math

import numpy as np
import pytest

from cepfront import (
    InvalidParameterError,
    MissingClassError,
    det_curve,
    eer,
    min_dcf,
)


def sweep_oracle(labels, scores):
    """Directly counted (threshold, p_miss, p_fa) points, accept on ties."""
    targets = [s for l, s in zip(labels, scores) if l]
    nontargets = [s for l, s in zip(labels, scores) if not l]
    points = []
    for th in [-math.inf] + sorted(set(scores)) + [math.inf]:
        p_miss = sum(s < th for s in targets) / len(targets)
        p_fa = sum(s >= th for s in nontargets) / len(nontargets)
        points.append((th, p_miss, p_fa))
    return points


def eer_oracle(points):
    """Interpolated crossing of the miss and false-alarm rates."""
    for i in range(len(points)):
        _, pm, pf = points[i]
        if pm - pf >= 0.0:
            if pm == pf:
                return pm
            _, pm0, pf0 = points[i - 1]
            u = (pf0 - pm0) / ((pm - pm0) - (pf - pf0))
            return pm0 + u * (pm - pm0)
    raise AssertionError("no crossing found")


def min_dcf_oracle(points, p_tar, c_miss, c_fa):
    best = min(c_miss * p_tar * pm + c_fa * (1 - p_tar) * pf for _, pm, pf in points)
    return best / min(c_miss * p_tar, c_fa * (1 - p_tar))


def random_trials(rng):
    n = int(rng.integers(2, 65))
    labels = np.zeros(n, dtype=bool)
    labels[: int(rng.integers(1, n))] = True
    rng.shuffle(labels)
    if rng.random() < 0.5:
        scores = rng.normal(size=n)  # continuous, no ties
    else:
        scores = rng.integers(0, 6, size=n) / 4.0  # heavy ties
    return labels, scores


class TestDetCurve:
    def test_perfect_separation_has_zero_error_point(self):
        curve = det_curve([True, False], [1.0, 0.0])
        both_zero = (curve.p_miss == 0.0) & (curve.p_fa == 0.0)
        assert both_zero.any()

    def test_identical_scores(self):
        curve = det_curve([True, False, True], [0.5, 0.5, 0.5])
        points = set(zip(curve.p_miss, curve.p_fa))
        assert points == {(0.0, 1.0), (1.0, 0.0)}

    def test_interleaved_points_match_oracle(self):
        labels = [True, False, True, False]
        scores = [0.9, 0.6, 0.4, 0.1]
        curve = det_curve(labels, scores)
        oracle = sweep_oracle(labels, scores)
        got = list(zip(curve.thresholds, curve.p_miss, curve.p_fa))
        assert got == oracle

    def test_monotone_rates(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            labels, scores = random_trials(rng)
            curve = det_curve(labels, scores)
            assert np.all(np.diff(curve.p_miss) >= 0.0)
            assert np.all(np.diff(curve.p_fa) <= 0.0)
            assert curve.p_miss[0] == 0.0 and curve.p_fa[0] == 1.0
            assert curve.p_miss[-1] == 1.0 and curve.p_fa[-1] == 0.0

    def test_missing_class_rejected(self):
        with pytest.raises(MissingClassError):
            det_curve([True, True], [0.1, 0.2])
        with pytest.raises(MissingClassError):
            det_curve([False, False], [0.1, 0.2])

    def test_string_labels(self):
        curve = det_curve(["target", "nontarget"], [1.0, 0.0])
        assert curve.p_miss.shape == curve.p_fa.shape

    def test_non_finite_scores_rejected(self):
        with pytest.raises(InvalidParameterError):
            det_curve([True, False], [np.nan, 0.0])


class TestEer:
    def test_perfect_separation(self):
        assert eer([True, False], [1.0, 0.0]) == 0.0

    def test_interleaved_symmetric_is_half(self):
        assert eer([True, False, True, False], [4.0, 3.0, 2.0, 1.0]) == pytest.approx(0.5)

    def test_three_vs_three_crossing(self):
        labels = [True, True, True, False, False, False]
        scores = [0.8, 0.6, 0.4, 0.7, 0.3, 0.1]
        assert eer(labels, scores) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_matches_oracle_on_random_sets(self):
        rng = np.random.default_rng(1)
        for _ in range(300):
            labels, scores = random_trials(rng)
            expected = eer_oracle(sweep_oracle(labels, scores))
            assert eer(labels, scores) == pytest.approx(expected, abs=1e-12)


class TestMinDcf:
    def test_perfect_separation(self):
        assert min_dcf([True, False], [1.0, 0.0]) == 0.0

    def test_identical_scores_normalized_cost_is_one(self):
        assert min_dcf([True, False], [0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)

    def test_matches_oracle_on_random_sets(self):
        rng = np.random.default_rng(2)
        for _ in range(300):
            labels, scores = random_trials(rng)
            got = min_dcf(labels, scores)
            expected = min_dcf_oracle(sweep_oracle(labels, scores), 0.01, 1.0, 1.0)
            assert got == pytest.approx(expected, abs=1e-12)
            assert 0.0 <= got <= 1.0  # normalized cost is capped by the blind decision

    def test_raw_cost_option(self):
        raw = min_dcf([True, False], [0.5, 0.5], normalize=False)
        assert raw == pytest.approx(0.01, abs=1e-15)

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameterError):
            min_dcf([True, False], [1.0, 0.0], p_tar=0.0)
        with pytest.raises(InvalidParameterError):
            min_dcf([True, False], [1.0, 0.0], c_miss=0.0)


class TestMonotoneInvariance:
    def test_rank_statistics_only(self):
        rng = np.random.default_rng(3)
        labels, scores = random_trials(rng)
        base_eer = eer(labels, scores)
        base_dcf = min_dcf(labels, scores)
        for _ in range(30):
            a, b = rng.uniform(0.1, 3.0, 2)
            mapped = a * scores + b * np.tanh(scores)  # strictly increasing
            assert eer(labels, mapped) == pytest.approx(base_eer, abs=1e-12)
            assert min_dcf(labels, mapped) == pytest.approx(base_dcf, abs=1e-12)
