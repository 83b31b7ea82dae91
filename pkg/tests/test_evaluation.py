import math

import numpy as np
import pytest

from textsep import (
    ConfigError,
    ConfusionMatrix,
    CvReport,
    Label,
    LabeledSample,
    confusion_matrix,
    cross_validate,
    format_report,
    kfold_partition,
)
from textsep.evaluation import format_per_k_table, format_percent, report_csv_rows
from textsep.features import FeatureVector

from oracles import oracle_knn

H, P = Label.HANDWRITTEN, Label.PRINTED

PAPER_COUNTS = np.array([[4950, 50], [24, 4976]])


def make_dataset(rng, n_per_class, spread=0.05, separation=1.0):
    """Two 9-D Gaussian blobs, one per class."""
    samples = []
    for cls, center in ((H, 0.0), (P, separation)):
        for i in range(n_per_class):
            feats = rng.normal(center, spread, size=9)
            samples.append(
                LabeledSample(
                    path=f"{cls.display()}/{i}.png",
                    label=cls,
                    features=FeatureVector(*feats),
                )
            )
    return samples


# --- kfold_partition ------------------------------------------------------------


def test_fold_sizes_n10_k10():
    assign = kfold_partition([0] * 5 + [1] * 5, K=10, seed=1)
    sizes = np.bincount(assign.folds, minlength=10)
    assert (sizes == 1).all()


def test_fold_sizes_n103_k10():
    assign = kfold_partition([0, 1] * 51 + [0], K=10, seed=2)
    sizes = sorted(np.bincount(assign.folds, minlength=10), reverse=True)
    assert sizes == [11, 11, 11, 10, 10, 10, 10, 10, 10, 10]


def test_partition_deterministic_and_exhaustive(rng):
    labels = [int(v) for v in rng.integers(0, 2, size=57)]
    a = kfold_partition(labels, K=7, seed=99)
    b = kfold_partition(labels, K=7, seed=99)
    assert np.array_equal(a.folds, b.folds)
    assert set(range(7)) == set(a.folds.tolist())
    assert len(a.folds) == 57  # every sample in exactly one fold
    c = kfold_partition(labels, K=7, seed=100)
    assert not np.array_equal(a.folds, c.folds)


def test_stratified_partition_balances_classes(rng):
    labels = [0] * 37 + [1] * 23
    assign = kfold_partition(labels, K=5, seed=3, stratified=True)
    y = np.array(labels)
    for cls in (0, 1):
        sizes = np.bincount(assign.folds[y == cls], minlength=5)
        assert sizes.max() - sizes.min() <= 1


def test_stratified_partition_fills_every_fold():
    labels = [0] + [1] * 9  # one class smaller than K
    assign = kfold_partition(labels, K=10, seed=4, stratified=True)
    assert set(assign.folds.tolist()) == set(range(10))


def test_partition_rejects_bad_K():
    with pytest.raises(ConfigError):
        kfold_partition([0, 1, 0], K=4, seed=0)
    with pytest.raises(ConfigError):
        kfold_partition([0, 1, 0], K=1, seed=0)


# --- confusion matrix --------------------------------------------------------------


def test_confusion_all_correct():
    cm = confusion_matrix([H, P, H], [H, P, H])
    assert np.array_equal(cm.counts, [[2, 0], [0, 1]])


def test_confusion_all_wrong():
    cm = confusion_matrix([H] * 4, [P] * 4)
    assert np.array_equal(cm.counts, [[0, 4], [0, 0]])


def test_confusion_matches_tally(rng):
    truth = [Label(int(v)) for v in rng.integers(0, 2, size=200)]
    pred = [Label(int(v)) for v in rng.integers(0, 2, size=200)]
    cm = confusion_matrix(truth, pred)
    expected = np.zeros((2, 2), dtype=int)
    for t, p in zip(truth, pred):
        expected[int(t), int(p)] += 1
    assert np.array_equal(cm.counts, expected)
    assert np.array_equal(cm.row_totals(), expected.sum(axis=1))


def test_confusion_rejects_mismatch():
    with pytest.raises(ValueError):
        confusion_matrix([H], [H, P])


# --- cross_validate -----------------------------------------------------------------


def test_separable_clusters_are_perfect(rng):
    dataset = make_dataset(rng, 30, spread=0.01, separation=1.0)
    report = cross_validate(dataset, K=10, k=5, seed=7)
    assert report.accuracy_handwritten == 100.0
    assert report.accuracy_printed == 100.0
    assert report.accuracy_average == 100.0


def test_paper_confusion_counts_reproduce_reported_accuracies():
    report = CvReport.from_confusion(ConfusionMatrix(PAPER_COUNTS), K=10, k=5, seed=0)
    assert report.accuracy_handwritten == pytest.approx(99.00, abs=5e-3)
    assert report.accuracy_printed == pytest.approx(99.52, abs=5e-3)
    assert report.accuracy_average == pytest.approx(99.26, abs=5e-3)
    assert format_percent(report.accuracy_handwritten) == "99.00"
    assert format_percent(report.accuracy_printed) == "99.52"
    assert format_percent(report.accuracy_average) == "99.26"


def test_twelve_sample_manual_trace(rng):
    dataset = make_dataset(rng, 6, spread=0.4, separation=0.5)  # overlapping on purpose
    report = cross_validate(dataset, K=3, k=1, seed=5)

    x = np.array([tuple(s.features) for s in dataset])
    y = np.array([int(s.label) for s in dataset])
    assign = kfold_partition(y, K=3, seed=5)
    expected = np.zeros((2, 2), dtype=int)
    for f in range(3):
        train = np.flatnonzero(assign.folds != f)
        test = np.flatnonzero(assign.folds == f)
        for i in test:
            pred, _ = oracle_knn(x[train], y[train], x[i], k=1)
            expected[y[i], pred] += 1
    assert np.array_equal(report.confusion.counts, expected)
    acc_h = 100.0 * expected[0, 0] / expected[0].sum()
    acc_p = 100.0 * expected[1, 1] / expected[1].sum()
    assert report.accuracy_handwritten == pytest.approx(acc_h, abs=1e-12)
    assert report.accuracy_printed == pytest.approx(acc_p, abs=1e-12)
    assert report.accuracy_average == pytest.approx((acc_h + acc_p) / 2, abs=1e-12)


def test_every_sample_validated_once(rng):
    dataset = make_dataset(rng, 26, spread=0.3, separation=0.4)
    report = cross_validate(dataset, K=10, k=3, seed=11)
    assert report.confusion.counts.sum() == len(dataset)
    assert np.array_equal(report.confusion.row_totals(), [26, 26])


def test_cross_validate_bit_reproducible(rng):
    dataset = make_dataset(rng, 20, spread=0.3, separation=0.3)
    a = cross_validate(dataset, K=5, k=3, seed=17)
    b = cross_validate(dataset, K=5, k=3, seed=17)
    assert np.array_equal(a.confusion.counts, b.confusion.counts)
    assert (a.accuracy_handwritten, a.accuracy_printed, a.accuracy_average) == (
        b.accuracy_handwritten,
        b.accuracy_printed,
        b.accuracy_average,
    )
    assert (a.K, a.k, a.seed, a.stratified, a.rng) == (b.K, b.k, b.seed, b.stratified, b.rng)


def test_identical_feature_vectors_do_not_crash():
    dataset = [
        LabeledSample(path=f"{i}", label=H if i < 10 else P, features=FeatureVector(*([0.5] * 9)))
        for i in range(20)
    ]
    report = cross_validate(dataset, K=5, k=3, seed=1)
    assert report.accuracy_handwritten + report.accuracy_printed <= 200.0
    assert math.isfinite(report.accuracy_average)


def test_average_is_mean_of_per_class(rng):
    dataset = make_dataset(rng, 40, spread=0.5, separation=0.4)
    report = cross_validate(dataset, K=10, k=5, seed=23)
    mean = (report.accuracy_handwritten + report.accuracy_printed) / 2
    assert abs(report.accuracy_average - mean) < 0.005


def test_cross_validate_requires_both_classes():
    dataset = [
        LabeledSample(path=f"{i}", label=H, features=FeatureVector(*([float(i)] * 9)))
        for i in range(10)
    ]
    with pytest.raises(ConfigError):
        cross_validate(dataset, K=5, k=1, seed=0)


def test_report_records_rng_algorithm(rng):
    dataset = make_dataset(rng, 10, spread=0.1)
    report = cross_validate(dataset, K=5, k=1, seed=0)
    assert report.rng == "numpy-pcg64"


# --- formatting -----------------------------------------------------------------------


def paper_report(k=5):
    return CvReport.from_confusion(ConfusionMatrix(PAPER_COUNTS), K=10, k=k, seed=42)


def test_confusion_table_rows_sum_to_totals():
    text = format_report(paper_report(), "confusion-table")
    lines = text.splitlines()
    assert "Handwritten" in lines[0] and "Total" in lines[0]
    assert lines[1].split() == ["Handwritten", "4950", "50", "5000"]
    assert lines[2].split() == ["Printed", "24", "4976", "5000"]


def test_per_k_table_shows_paper_average():
    text = format_report([paper_report(k) for k in (1, 3, 5, 7)], "per-k-table")
    lines = text.splitlines()
    assert lines[0].split() == ["k", "=", "1", "k", "=", "3", "k", "=", "5", "k", "=", "7"]
    assert lines[3].split() == ["Average", "99.26", "99.26", "99.26", "99.26"]


def test_perfect_report_renders_100():
    cm = ConfusionMatrix(np.array([[10, 0], [0, 10]]))
    text = format_per_k_table([CvReport.from_confusion(cm, K=10, k=1, seed=0)])
    for line in text.splitlines()[1:]:
        assert line.split()[-1] == "100.00"


def test_per_group_table_layout():
    reports = {"kannada": paper_report(), "roman": paper_report()}
    text = format_report(reports, "per-group-table")
    lines = text.splitlines()
    assert lines[0].split() == ["kannada", "roman"]
    assert lines[3].split() == ["Average", "99.26", "99.26"]


def test_format_percent_rounds_half_up():
    assert format_percent(99.255) == "99.26"
    assert format_percent(98.005) == "98.01"
    assert format_percent(100.0) == "100.00"
    assert format_percent(2.5) == "2.50"
    assert format_percent(float("nan")) == "nan"


def test_unknown_layout_rejected():
    with pytest.raises(ConfigError):
        format_report(paper_report(), "pie-chart")


def test_report_csv_rows():
    rows = report_csv_rows(paper_report())
    assert ("handwritten", "accuracy", "99.00") in rows
    assert ("printed", "accuracy", "99.52") in rows
    assert ("average", "accuracy", "99.26") in rows
    assert ("handwritten", "predicted_printed", "50") in rows
    assert ("printed", "predicted_handwritten", "24") in rows
