import numpy as np
import pytest

from propclust import metrics
from propclust.metrics import dist, pairwise

from _oracles import ORACLE_METRICS

ALL = metrics.METRICS


class TestKnownValues:
    def test_l2(self):
        assert dist("l2", [0.0, 0.0], [3.0, 4.0]) == 5.0

    def test_l1(self):
        assert dist("l1", [0.0, 0.0], [3.0, 4.0]) == 7.0

    def test_cosine_parallel(self):
        assert dist("cosine", [1.0, 2.0], [2.0, 4.0]) == pytest.approx(0.0, abs=1e-12)

    def test_cosine_orthogonal(self):
        assert dist("cosine", [1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0)

    def test_cosine_opposite(self):
        assert dist("cosine", [1.0, 0.0], [-1.0, 0.0]) == pytest.approx(2.0)

    def test_cosine_zero_vector(self):
        assert dist("cosine", [0.0, 0.0], [1.0, 1.0]) == 1.0
        assert dist("cosine", [0.0, 0.0], [0.0, 0.0]) == 1.0

    def test_js_disjoint_support(self):
        assert dist("js", [1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0)

    def test_js_scale_invariant(self):
        a, b = [1.0, 3.0], [2.0, 2.0]
        assert dist("js", a, b) == pytest.approx(
            dist("js", [10.0, 30.0], [4.0, 4.0]), abs=1e-12
        )

    def test_canberra(self):
        assert dist("canberra", [1.0, 0.0], [0.0, 1.0]) == 2.0
        assert dist("canberra", [0.0, 0.0], [0.0, 0.0]) == 0.0


class TestDomain:
    def test_unknown_metric(self):
        with pytest.raises(ValueError, match="unknown metric"):
            dist("chebyshev", [0.0], [1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            dist("l2", [0.0, 1.0], [1.0])
        with pytest.raises(ValueError, match="mismatch"):
            pairwise("l2", np.zeros((3, 2)), np.zeros((3, 4)))

    def test_js_negative_entry(self):
        with pytest.raises(ValueError, match="nonnegative"):
            dist("js", [0.5, -0.1], [0.5, 0.5])

    def test_js_zero_vector(self):
        with pytest.raises(ValueError, match="positive entry"):
            dist("js", [0.0, 0.0], [0.5, 0.5])


def _random_vec(rng, d, metric):
    v = rng.normal(size=d)
    if metric == "js":
        v = np.abs(v) + 1e-3
    return v


class TestAxioms:
    @pytest.mark.parametrize("metric", ALL)
    def test_identity(self, metric, rng):
        for _ in range(20):
            a = _random_vec(rng, 6, metric)
            assert dist(metric, a, a) <= 1e-6

    @pytest.mark.parametrize("metric", ALL)
    def test_symmetry(self, metric, rng):
        for _ in range(20):
            a = _random_vec(rng, 6, metric)
            b = _random_vec(rng, 6, metric)
            assert abs(dist(metric, a, b) - dist(metric, b, a)) <= 1e-12

    @pytest.mark.parametrize("metric", ["l2", "l1", "canberra", "js"])
    def test_triangle_inequality(self, metric, rng):
        # cosine distance is excluded: 1 - cos violates it in general
        for _ in range(50):
            a = _random_vec(rng, 5, metric)
            b = _random_vec(rng, 5, metric)
            c = _random_vec(rng, 5, metric)
            assert dist(metric, a, c) <= dist(metric, a, b) + dist(metric, b, c) + 1e-12

    @pytest.mark.parametrize("metric", ALL)
    def test_nonnegative_finite(self, metric, rng):
        for _ in range(20):
            a = _random_vec(rng, 4, metric)
            b = _random_vec(rng, 4, metric)
            v = dist(metric, a, b)
            assert np.isfinite(v) and v >= 0.0


class TestPairwise:
    @pytest.mark.parametrize("metric", ALL)
    def test_matches_scalar(self, metric, rng):
        a = np.stack([_random_vec(rng, 7, metric) for _ in range(12)])
        b = np.stack([_random_vec(rng, 7, metric) for _ in range(9)])
        m = pairwise(metric, a, b)
        assert m.shape == (12, 9) and m.dtype == np.float64
        for i in range(12):
            for j in range(9):
                assert m[i, j] == pytest.approx(dist(metric, a[i], b[j]), abs=1e-10)

    @pytest.mark.parametrize("metric", ALL)
    def test_matches_oracle(self, metric, rng):
        fn = ORACLE_METRICS[metric]
        a = np.stack([_random_vec(rng, 5, metric) for _ in range(8)])
        m = pairwise(metric, a)
        for i in range(8):
            for j in range(8):
                assert m[i, j] == pytest.approx(fn(a[i], a[j]), abs=1e-10)

    @pytest.mark.parametrize("metric", ALL)
    def test_float32_input_accumulates_float64(self, metric, rng):
        a = np.stack([_random_vec(rng, 6, metric) for _ in range(10)]).astype(np.float32)
        m = pairwise(metric, a)
        assert m.dtype == np.float64
        assert np.allclose(m, m.T, atol=1e-12)
        assert np.all(np.diag(m) <= 1e-6)

    def test_cosine_zero_rows(self):
        a = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
        m = pairwise("cosine", a)
        assert m[0, 1] == 1.0 and m[0, 2] == 1.0 and m[0, 0] == 1.0

    def test_bounded_metrics(self, rng):
        a = np.abs(rng.normal(size=(15, 6))) + 1e-6
        assert np.all(pairwise("js", a) <= 1.0)
        b = rng.normal(size=(15, 6))
        assert np.all(pairwise("cosine", b) <= 2.0)
