"""k-nearest-neighbor classification of feature vectors.

Features are z-scored inside the model (fit on the training set) because the
raw features span wildly different scales — local range runs up to 255 while
smoothness stays below 0.2 — and unscaled Euclidean distance would be
dominated by the largest axis. Prediction is a full scan: Euclidean distance
to every training vector, majority vote among the k nearest, all ties
resolved deterministically.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

import numpy as np

from .errors import ConfigError

_ZERO_VARIANCE = 1e-12


class Label(IntEnum):
    HANDWRITTEN = 0
    PRINTED = 1

    @classmethod
    def from_name(cls, name: str) -> "Label":
        try:
            return cls[str(name).strip().upper()]
        except KeyError:
            raise ValueError(f"unknown label {name!r}; expected handwritten or printed") from None

    def display(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Standardizer:
    """Per-feature affine transform: (v - mean) / scale."""

    mean: np.ndarray
    scale: np.ndarray

    def transform(self, v) -> np.ndarray:
        return (np.asarray(v, dtype=np.float64) - self.mean) / self.scale

    def inverse(self, v) -> np.ndarray:
        return np.asarray(v, dtype=np.float64) * self.scale + self.mean


def fit_standardizer(samples) -> Standardizer:
    """Fit per-feature mean and population std; features with ~zero variance get scale 1."""
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise ConfigError("cannot fit a standardizer on zero samples")
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {x.shape}")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    scale = np.where(std < _ZERO_VARIANCE, 1.0, std)
    return Standardizer(mean=mean, scale=scale)


def standardize(v, standardizer: Standardizer) -> np.ndarray:
    return standardizer.transform(v)


class Neighbor(NamedTuple):
    index: int
    distance: float
    label: Label


@dataclass(frozen=True)
class KnnModel:
    """Instance store for k-NN: standardized training vectors plus their labels."""

    vectors: np.ndarray
    labels: np.ndarray
    k: int
    standardizer: Standardizer


def knn_fit(samples, labels, k: int) -> KnnModel:
    """Fit the standardizer on the samples and store standardized copies.

    k must be odd (avoids two-class vote ties) and at most the sample count.
    """
    x = np.asarray(samples, dtype=np.float64)
    y = np.asarray([int(label) for label in labels], dtype=np.int64)
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {x.shape}")
    if len(x) != len(y):
        raise ConfigError(f"got {len(x)} samples but {len(y)} labels")
    k = int(k)
    if k < 1 or k % 2 == 0:
        raise ConfigError(f"k must be odd and >= 1, got {k}")
    if k > len(x):
        raise ConfigError(f"k={k} exceeds the {len(x)} training samples")
    standardizer = fit_standardizer(x)
    return KnnModel(
        vectors=standardizer.transform(x),
        labels=y,
        k=k,
        standardizer=standardizer,
    )


def knn_predict(model: KnnModel, query) -> tuple[Label, list[Neighbor]]:
    """Classify one feature vector by majority vote of its k nearest neighbors.

    Equal distances rank by lower training index; a vote tie (impossible for
    odd k with two classes) falls back to the single nearest neighbor's class.
    Returns the label and the k neighbors sorted by distance.
    """
    q = model.standardizer.transform(query)
    diff = model.vectors - q
    d2 = np.sum(diff * diff, axis=1)
    nearest = np.argsort(d2, kind="stable")[: model.k]
    votes = np.bincount(model.labels[nearest], minlength=len(Label))
    top = votes.max()
    winners = np.flatnonzero(votes == top)
    if len(winners) == 1:
        label = Label(int(winners[0]))
    else:
        label = Label(int(model.labels[nearest[0]]))
    neighbors = [
        Neighbor(int(i), float(np.sqrt(d2[i])), Label(int(model.labels[i]))) for i in nearest
    ]
    return label, neighbors
