import numpy as np
import pytest

from propclust.scores import (
    ami,
    ari,
    contingency,
    evaluate_labels,
    expected_mutual_information,
    nmi,
)

from _oracles import direct_ami, direct_ari, direct_nmi, enumerate_emi


def _random_pair(rng, n_max=60, c_max=6):
    n = int(rng.integers(2, n_max))
    u = rng.integers(0, int(rng.integers(2, c_max + 1)), size=n)
    v = rng.integers(0, int(rng.integers(2, c_max + 1)), size=n)
    return u, v


class TestFrozenValues:
    # u splits one of v's clusters: 4/7 by pair counting, sqrt(2/3) by
    # entropy normalization, AMI sits between after chance correction
    U = [0, 0, 1, 2]
    V = [0, 0, 1, 1]

    def test_ari(self):
        assert ari(contingency(self.U, self.V)) == pytest.approx(4 / 7)

    def test_nmi(self):
        assert nmi(contingency(self.U, self.V)) == pytest.approx(np.sqrt(2 / 3))

    def test_ami(self):
        assert ami(contingency(self.U, self.V)) == pytest.approx(0.5972878541236597)

    def test_emi(self):
        t = contingency(self.U, self.V)
        assert expected_mutual_information(t) == pytest.approx(0.46209812037329684)

    def test_identical_labelings_score_one(self):
        for u in ([0, 1, 2, 1], [5, 5, 5], [0]):
            t = contingency(u, u)
            assert ari(t) == nmi(t) == ami(t) == 1.0

    def test_permuted_label_ids_score_one(self):
        u = [0, 0, 1, 1, 2, 2]
        v = [7, 7, 3, 3, 5, 5]
        t = contingency(u, v)
        assert ari(t) == nmi(t) == ami(t) == 1.0


class TestDegenerate:
    def test_both_single_cluster(self):
        t = contingency([0, 0, 0], [4, 4, 4])
        assert ari(t) == 1.0 and nmi(t) == 1.0 and ami(t) == 1.0

    def test_both_all_singletons(self):
        t = contingency([0, 1, 2], [2, 0, 1])
        assert ari(t) == 1.0 and nmi(t) == 1.0 and ami(t) == 1.0

    def test_single_cluster_vs_nontrivial_scores_zero(self):
        t = contingency([0, 0, 0, 0], [0, 0, 1, 1])
        assert ari(t) == 0.0 and nmi(t) == 0.0 and ami(t) == 0.0

    def test_singletons_vs_single_cluster(self):
        t = contingency([0, 1, 2], [0, 0, 0])
        assert nmi(t) == 0.0 and ami(t) == 0.0
        assert ari(t) == 0.0

    def test_one_point(self):
        t = contingency([3], [9])
        assert ari(t) == 1.0 and nmi(t) == 1.0 and ami(t) == 1.0


class TestAgainstOracles:
    def test_ari_matches_direct(self, rng):
        for _ in range(100):
            u, v = _random_pair(rng)
            got = ari(contingency(u, v))
            assert got == pytest.approx(direct_ari(u.tolist(), v.tolist()), abs=1e-12)

    def test_nmi_matches_direct(self, rng):
        for _ in range(100):
            u, v = _random_pair(rng)
            got = nmi(contingency(u, v))
            assert got == pytest.approx(direct_nmi(u.tolist(), v.tolist()), abs=1e-12)

    def test_emi_matches_table_enumeration(self, rng):
        # the enumeration sums exact table probabilities, sharing nothing
        # with the hypergeometric cell formula; small n keeps it feasible
        for _ in range(25):
            n = int(rng.integers(3, 13))
            u = rng.integers(0, int(rng.integers(2, 5)), size=n)
            v = rng.integers(0, int(rng.integers(2, 5)), size=n)
            t = contingency(u, v)
            expected = enumerate_emi(sorted(t.a.tolist()), sorted(t.b.tolist()))
            assert expected_mutual_information(t) == pytest.approx(expected, abs=1e-10)

    def test_ami_matches_direct_enumeration(self, rng):
        for _ in range(15):
            n = int(rng.integers(3, 12))
            u = rng.integers(0, 3, size=n)
            v = rng.integers(0, 3, size=n)
            got = ami(contingency(u, v))
            assert got == pytest.approx(direct_ami(u.tolist(), v.tolist()), abs=1e-10)

    def test_ami_matches_sklearn_geometric(self, rng):
        sklearn = pytest.importorskip("sklearn.metrics")
        for _ in range(40):
            u, v = _random_pair(rng)
            got = ami(contingency(u, v))
            want = sklearn.adjusted_mutual_info_score(u, v, average_method="geometric")
            assert got == pytest.approx(want, abs=1e-9)


class TestProperties:
    def test_symmetry(self, rng):
        for _ in range(20):
            u, v = _random_pair(rng)
            for score in (ari, nmi, ami):
                assert score(contingency(u, v)) == pytest.approx(
                    score(contingency(v, u)), abs=1e-12
                )

    def test_independent_labelings_near_zero_ami(self, rng):
        u = rng.integers(0, 10, size=2000)
        v = rng.integers(0, 10, size=2000)
        assert abs(ami(contingency(u, v))) <= 0.02
        assert abs(ari(contingency(u, v))) <= 0.02

    def test_bounds(self, rng):
        for _ in range(30):
            u, v = _random_pair(rng)
            t = contingency(u, v)
            assert nmi(t) <= 1.0 + 1e-12
            assert ami(t) <= 1.0 + 1e-12
            assert ari(t) <= 1.0 + 1e-12


class TestContingency:
    def test_table_and_margins(self):
        t = contingency([0, 0, 1, 1], [0, 1, 1, 1])
        assert t.counts.tolist() == [[1, 1], [0, 2]]
        assert t.a.tolist() == [2, 2]
        assert t.b.tolist() == [1, 3]
        assert t.n == 4

    def test_noncontiguous_ids_compact(self):
        t = contingency([10, 10, 40], [7, 2, 2])
        assert t.counts.shape == (2, 2)
        assert t.n == 3

    def test_identical_partition_detection(self):
        assert contingency([0, 0, 1], [5, 5, 2]).identical_partitions()
        assert not contingency([0, 0, 1], [0, 1, 1]).identical_partitions()

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError, match="mismatch"):
            contingency([0, 1], [0, 1, 2])
        with pytest.raises(ValueError, match="empty"):
            contingency([], [])


class TestEvaluateLabels:
    def test_structure(self):
        out = evaluate_labels([0, 0, 1, 2], [0, 0, 1, 1])
        assert set(out) == {"ami", "nmi", "ari", "numClustersU", "numClustersV"}
        assert out["numClustersU"] == 3
        assert out["numClustersV"] == 2
        assert out["ari"] == pytest.approx(4 / 7)
        assert all(isinstance(out[k], float) for k in ("ami", "nmi", "ari"))
