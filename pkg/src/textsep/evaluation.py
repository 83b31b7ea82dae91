"""K-fold cross-validation, confusion matrices, and accuracy reports.

Folds come from a seeded shuffle (numpy's PCG64 generator, recorded in the
report so partitions stay reproducible) followed by round-robin dealing.
Each fold is validated once against a model fitted on the other K-1 folds —
including refitting the feature standardizer per fold, so no statistics leak
from validation into training. Predictions are pooled into one confusion
matrix; per-class accuracy is 100 * diagonal / row total and the average is
the unweighted mean of the two class accuracies.
"""

import csv
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

import numpy as np

from .classifier import Label, knn_fit, knn_predict
from .errors import ConfigError

RNG_ALGORITHM = "numpy-pcg64"

_CLASS_ROWS = ("Handwritten", "Printed")


@dataclass(frozen=True)
class FoldAssignment:
    """Per-sample fold indices in [0, K)."""

    folds: np.ndarray
    K: int
    seed: int
    stratified: bool


def kfold_partition(labels, K: int, seed: int, stratified: bool = False) -> FoldAssignment:
    """Assign each sample to one of K folds with a seeded deterministic shuffle.

    Plain mode shuffles all indices and deals them round-robin, so fold sizes
    differ by at most one. Stratified mode shuffles and deals each class
    separately (continuing the round-robin across classes), keeping the
    per-class fold counts within one of each other.
    """
    y = np.asarray([int(v) for v in labels], dtype=np.int64)
    n = len(y)
    K = int(K)
    if K < 2:
        raise ConfigError(f"K must be >= 2, got {K}")
    if K > n:
        raise ConfigError(f"K={K} exceeds the {n} samples")
    rng = np.random.default_rng(seed)
    folds = np.empty(n, dtype=np.int64)
    if not stratified:
        perm = rng.permutation(n)
        folds[perm] = np.arange(n) % K
    else:
        offset = 0
        for cls in np.unique(y):
            idx = rng.permutation(np.flatnonzero(y == cls))
            folds[idx] = (offset + np.arange(len(idx))) % K
            offset = (offset + len(idx)) % K
    return FoldAssignment(folds=folds, K=K, seed=int(seed), stratified=bool(stratified))


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[true][predicted] over the class order (Handwritten, Printed)."""

    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts)
        if c.shape != (2, 2) or not np.issubdtype(c.dtype, np.integer) or (c < 0).any():
            raise ValueError("confusion matrix must be 2x2 non-negative integer counts")
        object.__setattr__(self, "counts", c.astype(np.int64))

    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def per_class_accuracy(self) -> tuple[float, float]:
        """Percent correct per true class; nan for a class with no samples."""
        totals = self.row_totals()
        accs = []
        for i in range(2):
            if totals[i] == 0:
                accs.append(float("nan"))
            else:
                accs.append(100.0 * self.counts[i, i] / totals[i])
        return accs[0], accs[1]

    def average_accuracy(self) -> float:
        a, b = self.per_class_accuracy()
        return (a + b) / 2.0


def confusion_matrix(truth, predicted) -> ConfusionMatrix:
    """Tally (true, predicted) label pairs."""
    t = [Label(int(v)) for v in truth]
    p = [Label(int(v)) for v in predicted]
    if len(t) != len(p) or not t:
        raise ValueError(f"need equal non-empty label lists, got {len(t)} and {len(p)}")
    counts = np.zeros((2, 2), dtype=np.int64)
    for a, b in zip(t, p):
        counts[a, b] += 1
    return ConfusionMatrix(counts)


@dataclass(frozen=True)
class CvReport:
    """Pooled cross-validation outcome plus the settings that produced it."""

    confusion: ConfusionMatrix
    accuracy_handwritten: float
    accuracy_printed: float
    accuracy_average: float
    K: int
    k: int
    seed: int
    stratified: bool
    rng: str = RNG_ALGORITHM

    @classmethod
    def from_confusion(
        cls,
        confusion: ConfusionMatrix,
        K: int,
        k: int,
        seed: int,
        stratified: bool = False,
    ) -> "CvReport":
        acc_h, acc_p = confusion.per_class_accuracy()
        return cls(
            confusion=confusion,
            accuracy_handwritten=acc_h,
            accuracy_printed=acc_p,
            accuracy_average=(acc_h + acc_p) / 2.0,
            K=int(K),
            k=int(k),
            seed=int(seed),
            stratified=bool(stratified),
        )


def cross_validate(
    dataset,
    K: int = 10,
    k: int = 5,
    seed: int = 0,
    stratified: bool = False,
) -> CvReport:
    """Run K-fold cross-validation of the k-NN classifier over labeled samples.

    dataset is a sequence of objects with .features and .label. Each fold's
    model (standardizer included) is fitted only on the other folds; every
    sample is predicted exactly once and pooled into one confusion matrix.
    """
    samples = list(dataset)
    if not samples:
        raise ConfigError("dataset is empty")
    x = np.asarray([tuple(s.features) for s in samples], dtype=np.float64)
    y = np.asarray([int(s.label) for s in samples], dtype=np.int64)
    if len(np.unique(y)) < 2:
        raise ConfigError("dataset must contain both classes")
    assignment = kfold_partition(y, K=K, seed=seed, stratified=stratified)
    truths: list[int] = []
    preds: list[int] = []
    for f in range(assignment.K):
        test = np.flatnonzero(assignment.folds == f)
        train = np.flatnonzero(assignment.folds != f)
        model = knn_fit(x[train], y[train], k)
        for i in test:
            label, _ = knn_predict(model, x[i])
            truths.append(int(y[i]))
            preds.append(int(label))
    cm = confusion_matrix(truths, preds)
    return CvReport.from_confusion(cm, K=assignment.K, k=k, seed=seed, stratified=stratified)


def format_percent(value: float) -> str:
    """Render a percentage with two decimals, rounding halves up."""
    value = float(value)
    if not math.isfinite(value):
        return str(value)  # a class with no samples has no accuracy
    return str(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = []
    for r in [header] + rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def format_per_k_table(reports) -> str:
    """Accuracy table with one column per report's neighbor count k."""
    reports = list(reports)
    header = [""] + [f"k = {r.k}" for r in reports]
    rows = [
        ["Handwritten"] + [format_percent(r.accuracy_handwritten) for r in reports],
        ["Printed"] + [format_percent(r.accuracy_printed) for r in reports],
        ["Average"] + [format_percent(r.accuracy_average) for r in reports],
    ]
    return _table(header, rows)


def format_confusion_table(report_or_matrix) -> str:
    """Confusion counts with per-row totals; rows are the true classes."""
    cm = report_or_matrix.confusion if isinstance(report_or_matrix, CvReport) else report_or_matrix
    c = cm.counts
    header = [""] + list(_CLASS_ROWS) + ["Total"]
    rows = [
        [_CLASS_ROWS[i], str(c[i, 0]), str(c[i, 1]), str(c[i, 0] + c[i, 1])] for i in range(2)
    ]
    return _table(header, rows)


def format_per_group_table(reports_by_group: dict) -> str:
    """Accuracy table with one column per named group."""
    names = list(reports_by_group)
    header = [""] + names
    rows = [
        ["Handwritten"]
        + [format_percent(reports_by_group[g].accuracy_handwritten) for g in names],
        ["Printed"] + [format_percent(reports_by_group[g].accuracy_printed) for g in names],
        ["Average"] + [format_percent(reports_by_group[g].accuracy_average) for g in names],
    ]
    return _table(header, rows)


def format_report(reports, layout: str) -> str:
    """Render reports as fixed-width text in one of the three table layouts."""
    if layout == "per-k-table":
        return format_per_k_table(reports if isinstance(reports, (list, tuple)) else [reports])
    if layout == "confusion-table":
        return format_confusion_table(reports)
    if layout == "per-group-table":
        return format_per_group_table(reports)
    raise ConfigError(f"unknown report layout {layout!r}")


def report_csv_rows(report: CvReport) -> list[tuple[str, str, str]]:
    """Flatten a report to (class, metric, value) rows."""
    c = report.confusion.counts
    return [
        ("handwritten", "accuracy", format_percent(report.accuracy_handwritten)),
        ("printed", "accuracy", format_percent(report.accuracy_printed)),
        ("average", "accuracy", format_percent(report.accuracy_average)),
        ("handwritten", "predicted_handwritten", str(c[0, 0])),
        ("handwritten", "predicted_printed", str(c[0, 1])),
        ("printed", "predicted_handwritten", str(c[1, 0])),
        ("printed", "predicted_printed", str(c[1, 1])),
    ]


def write_report_csv(report: CvReport, path) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["class", "metric", "value"])
        writer.writerows(report_csv_rows(report))
