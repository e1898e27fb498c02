import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from core.errors import DegenerateLabels, EmptyDataset
from core.schemas.config import CvSpec
from core.schemas.outputs import FeatureScore, Provenance, RankingResult
from core.select import choose_k, curve_csv, discretize, rank, ranking_csv, run_selection, select_topk


def _rank(matrix, labels, method, seed=0):
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix[:, None]
    names = [f"f{j}" for j in range(matrix.shape[1])]
    return rank(matrix, labels, method, names, ["account"] * len(names), seed=seed)


def _chi2_by_hand(column, labels):
    n = len(column)
    observed = Counter(zip(column, labels))
    rows = Counter(column)
    cols = Counter(labels)
    if len(rows) < 2 or len(cols) < 2:
        return 0.0
    total = 0.0
    for r in rows:
        for c in cols:
            expected = rows[r] * cols[c] / n
            total += (observed[(r, c)] - expected) ** 2 / expected
    return total


def _mi_by_hand(column, labels):
    n = len(column)
    joint = Counter(zip(column, labels))
    rows = Counter(column)
    cols = Counter(labels)
    return sum(
        (count / n) * math.log2((count / n) / ((rows[r] / n) * (cols[c] / n)))
        for (r, c), count in joint.items()
    )


@st.composite
def small_categorical(draw):
    n = draw(st.integers(4, 40))
    column = draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))
    labels = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    assume(len(set(labels)) == 2)
    return column, labels


class TestFilterScores:
    def test_perfect_binary_feature(self):
        labels = [0, 0, 1, 1]
        assert _rank(labels, labels, "chi2").scores[0].score == pytest.approx(4.0)
        assert _rank(labels, labels, "mutual_info").scores[0].score == pytest.approx(1.0)

    def test_independent_binary_feature(self):
        column, labels = [0, 1, 0, 1], [0, 0, 1, 1]
        assert _rank(column, labels, "chi2").scores[0].score == pytest.approx(0.0)
        assert _rank(column, labels, "mutual_info").scores[0].score == pytest.approx(0.0, abs=1e-12)

    @given(small_categorical())
    def test_chi2_matches_contingency_by_hand(self, data):
        column, labels = data
        assert _rank(column, labels, "chi2").scores[0].score == pytest.approx(_chi2_by_hand(column, labels))

    @given(small_categorical())
    def test_mutual_info_matches_definition(self, data):
        column, labels = data
        score = _rank(column, labels, "mutual_info").scores[0].score
        assert score == pytest.approx(_mi_by_hand(column, labels), abs=1e-9)
        assert score >= -1e-12

    @pytest.mark.parametrize("case", range(200))
    def test_contingency_scores_on_small_discrete_datasets(self, case):
        rng = np.random.default_rng(case)
        n_rows = int(rng.integers(4, 65))
        n_features = int(rng.integers(1, 6))
        n_categories = int(rng.integers(1, 6))
        matrix = rng.integers(0, n_categories, size=(n_rows, n_features))
        labels = rng.integers(0, 2, n_rows)
        labels[:2] = [0, 1]

        chi2 = {s.feature: s.score for s in _rank(matrix, labels, "chi2").scores}
        mi = {s.feature: s.score for s in _rank(matrix, labels, "mutual_info").scores}
        for j in range(n_features):
            column = matrix[:, j].tolist()
            assert chi2[f"f{j}"] == pytest.approx(_chi2_by_hand(column, labels.tolist()), rel=1e-9, abs=1e-9)
            assert mi[f"f{j}"] == pytest.approx(_mi_by_hand(column, labels.tolist()), abs=1e-9)

    def test_fisher_prefers_separating_feature(self):
        labels = [0, 0, 0, 1, 1, 1]
        matrix = np.column_stack([[1, 2, 3, 1, 2, 3], [0, 0.1, 0.2, 5, 5.1, 5.2]])
        ranking = _rank(matrix, labels, "fisher")
        assert ranking.ordered_features == ["f1", "f0"]
        assert ranking.scores[1].score == pytest.approx(0.0)

    def test_constant_column_scores_zero(self):
        labels = [0, 1, 0, 1]
        for method in ("chi2", "mutual_info", "fisher"):
            assert _rank([7, 7, 7, 7], labels, method).scores[0].score == pytest.approx(0.0, abs=1e-12)


class TestForestImportance:
    @pytest.mark.parametrize("seed", range(20))
    def test_label_copy_first_and_sums_to_one(self, seed):
        rng = np.random.default_rng(seed)
        labels = rng.integers(0, 2, 200)
        matrix = np.column_stack([rng.normal(size=200), labels, rng.normal(size=200)])
        ranking = _rank(matrix, labels, "rf_importance", seed=seed)
        assert ranking.ordered_features[0] == "f1"
        assert sum(s.score for s in ranking.scores) == pytest.approx(1.0)

    def test_constant_columns_share_importance_evenly(self):
        ranking = _rank(np.ones((10, 4)), [0, 1] * 5, "rf_importance")
        assert [s.score for s in ranking.scores] == pytest.approx([0.25] * 4)
        assert ranking.ordered_features == ["f0", "f1", "f2", "f3"]

    def test_seeded(self):
        rng = np.random.default_rng(1)
        labels = rng.integers(0, 2, 80)
        matrix = rng.normal(size=(80, 4))
        assert _rank(matrix, labels, "rf_importance", seed=5) == _rank(matrix, labels, "rf_importance", seed=5)


class TestRankContract:
    def test_ties_keep_catalog_order(self):
        labels = [0, 0, 1, 1]
        matrix = np.column_stack([[0, 0, 1, 1]] * 3)
        ranking = rank(matrix, labels, "chi2", ["zeta", "alpha", "mid"], ["content", "account", "account"])
        assert ranking.ordered_features == ["zeta", "alpha", "mid"]
        assert [s.source for s in ranking.scores] == ["content", "account", "account"]

    def test_scores_are_descending(self):
        rng = np.random.default_rng(2)
        labels = rng.integers(0, 2, 50)
        matrix = np.column_stack([labels + rng.normal(0, s, 50) for s in (2.0, 0.1, 0.5, 5.0)])
        scores = [s.score for s in _rank(matrix, labels, "fisher").scores]
        assert scores == sorted(scores, reverse=True)

    def test_single_class(self):
        with pytest.raises(DegenerateLabels):
            _rank([1, 2, 3], [1, 1, 1], "chi2")

    def test_empty(self):
        with pytest.raises(EmptyDataset):
            rank(np.zeros((0, 0)), [], "chi2", [], [])

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            _rank([0, 1], [0, 1], "anova")


class TestDiscretize:
    def test_few_values_kept_as_categories(self):
        assert discretize(np.array([5.0, 1.0, 5.0, 3.0]), 10).tolist() == [2, 0, 2, 1]

    def test_equal_frequency_bins(self):
        codes = discretize(np.arange(20, dtype=float), 4)
        assert Counter(codes.tolist()) == {0: 5, 1: 5, 2: 5, 3: 5}
        assert codes.tolist() == sorted(codes.tolist())


def _ranking(n=10):
    return RankingResult(
        method="fisher",
        seed=0,
        scores=[FeatureScore(feature=f"f{i}", score=float(n - i), source="account") for i in range(n)],
    )


def _scripted(accuracies):
    calls = []

    def scorer(subset):
        calls.append(list(subset))
        return accuracies[len(subset) - 1]

    return scorer, calls


class TestStoppingRule:
    def test_stops_after_two_misses(self):
        scorer, calls = _scripted([0.7, 0.9, 0.89, 0.88, 0.95, 0.96])
        result = run_selection(_ranking(), scorer, k_max=6, patience=2)
        assert [p.k for p in result.accuracy_curve] == [1, 2, 3, 4]
        assert result.chosen_k == 2
        assert result.chosen_features == ["f0", "f1"]
        assert calls[-1] == ["f0", "f1", "f2", "f3"]

    def test_increasing_curve_runs_to_k_max(self):
        scorer, _ = _scripted([0.5 + 0.01 * i for i in range(10)])
        result = run_selection(_ranking(), scorer, k_max=7, patience=2)
        assert len(result.accuracy_curve) == 7
        assert result.chosen_k == 7

    def test_equal_accuracy_is_not_an_improvement(self):
        scorer, _ = _scripted([0.8] * 10)
        result = run_selection(_ranking(), scorer, k_max=10, patience=2)
        assert len(result.accuracy_curve) == 3
        assert result.chosen_k == 1

    def test_miss_streak_resets(self):
        scorer, _ = _scripted([0.6, 0.5, 0.7, 0.65, 0.64, 0.9])
        result = run_selection(_ranking(), scorer, k_max=6, patience=2)
        assert [p.k for p in result.accuracy_curve] == [1, 2, 3, 4, 5]
        assert result.chosen_k == 3

    def test_k_max_beyond_catalog(self):
        scorer, _ = _scripted([0.1 * i for i in range(1, 4)])
        assert len(run_selection(_ranking(3), scorer, k_max=40).accuracy_curve) == 3

    def test_chosen_features_are_a_ranking_prefix(self):
        scorer, _ = _scripted([0.3, 0.2, 0.4, 0.1, 0.0])
        result = run_selection(_ranking(), scorer, k_max=5, patience=5)
        assert result.chosen_features == result.ranking.ordered_features[:result.chosen_k]

    def test_choose_k_smallest_on_ties(self):
        result = run_selection(_ranking(), _scripted([0.5, 0.9, 0.9, 0.9])[0], k_max=4, patience=5)
        assert choose_k(result.accuracy_curve) == 2


class TestSelectTopk:
    def test_informative_feature_is_enough(self):
        rng = np.random.default_rng(0)
        labels = np.array([0, 1] * 40)
        matrix = np.column_stack([labels + rng.normal(0, 0.05, 80)] + [rng.normal(size=80) for _ in range(4)])
        names = [f"f{j}" for j in range(5)]
        ranking = rank(matrix, labels, "fisher", names, ["account"] * 5)
        result = select_topk(matrix, labels, ranking, names, k_max=5, patience=2, cv=CvSpec(folds=4))
        assert result.chosen_features[0] == "f0"
        assert result.accuracy_curve[0].mean_accuracy >= 0.95

    def test_k_max_must_be_positive(self):
        with pytest.raises(ValueError):
            select_topk(np.zeros((4, 1)), [0, 1, 0, 1], _ranking(1), ["f0"], k_max=0, patience=2, cv=CvSpec(folds=2))


class TestExport:
    PROV = Provenance(config_hash="abc", seed=7, dataset_id="synthetic")

    def test_ranking_csv(self):
        lines = ranking_csv(_ranking(3), self.PROV).splitlines()
        assert lines[0].startswith("# config_hash=abc seed=7 dataset=synthetic")
        assert lines[1] == "feature,score,source"
        assert lines[2] == "f0,3.0000,account"

    def test_source_filter_and_limit(self):
        ranking = RankingResult(method="chi2", seed=0, scores=[
            FeatureScore(feature="a", score=3.0, source="content"),
            FeatureScore(feature="b", score=2.0, source="account"),
            FeatureScore(feature="c", score=1.0, source="account"),
        ])
        lines = ranking_csv(ranking, sources=["account"], limit=1).splitlines()
        assert lines == ["feature,score,source", "b,2.0000,account"]

    def test_curve_csv(self):
        result = run_selection(_ranking(), _scripted([0.5, 0.6])[0], k_max=2)
        lines = curve_csv(result).splitlines()
        assert lines[0] == "k,accuracy,seconds"
        assert lines[2].startswith("2,0.6000,")
