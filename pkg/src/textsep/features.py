"""The nine statistical texture features of a grayscale word image.

Six global features come from the normalized intensity histogram, with the
intensity axis rescaled to z = level/255 in [0, 1] so the smoothness measure
1 - 1/(1 + var) stays meaningful:

    f1 mean            m  = sum z_i p_i
    f2 std             sqrt of the second central moment
    f3 smoothness      1 - 1/(1 + var)
    f4 third moment    sum (z_i - m)^3 p_i
    f5 uniformity      sum p_i^2
    f6 entropy         -sum p_i log2 p_i   (bits)

Three local features are means of sliding-window filter images computed on
the raw 0..255 levels with replicated borders: sample standard deviation and
max-min range over 3x3 windows, and 256-bin histogram entropy over 9x9
windows. Histogram sums use exactly rounded accumulation (math.fsum) so the
small signed moments stay reproducible to the last digits.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from .imaging import GRAY_LEVELS, as_gray, histogram

N_FEATURES = 9
FEATURE_COLUMNS = ("f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9")

_Z = np.arange(GRAY_LEVELS, dtype=np.float64) / (GRAY_LEVELS - 1)

DEFAULT_STD_WINDOW = 3
DEFAULT_RANGE_WINDOW = 3
DEFAULT_ENTROPY_WINDOW = 9


class GlobalFeatures(NamedTuple):
    mean: float
    std: float
    smoothness: float
    third_moment: float
    uniformity: float
    entropy: float


class FeatureVector(NamedTuple):
    """The nine texture features of one word image (f1..f9 in order)."""

    mean: float
    std: float
    smoothness: float
    third_moment: float
    uniformity: float
    entropy: float
    local_std: float
    local_range: float
    local_entropy: float


def as_probabilities(p) -> np.ndarray:
    """Validate a 256-bin probability histogram."""
    arr = np.asarray(p, dtype=np.float64)
    if arr.shape != (GRAY_LEVELS,):
        raise ValueError(f"normalized histogram must have {GRAY_LEVELS} bins")
    if (arr < 0).any():
        raise ValueError("probabilities must be non-negative")
    if abs(math.fsum(arr) - 1.0) > 1e-9:
        raise ValueError("probabilities must sum to 1")
    return arr


def normalized_histogram(img) -> np.ndarray:
    """Per-level probabilities p(v) = count(v) / pixel total."""
    counts = histogram(img)
    return counts / counts.sum()


def central_moment(p, order: int) -> float:
    """Order-n central moment of the histogram on the z = level/255 axis."""
    p = as_probabilities(p)
    order = int(order)
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    m = math.fsum(_Z * p)
    d = _Z - m
    return math.fsum(d**order * p)


def global_features(p) -> GlobalFeatures:
    """Compute f1..f6 from a normalized intensity histogram."""
    p = as_probabilities(p)
    m = math.fsum(_Z * p)
    d = _Z - m
    var = math.fsum(d * d * p)
    std = math.sqrt(var)
    smoothness = 1.0 - 1.0 / (1.0 + var)
    third = math.fsum(d * d * d * p)
    uniformity = math.fsum(p * p)
    nz = p[p > 0]
    entropy = -math.fsum(nz * np.log2(nz)) + 0.0
    return GlobalFeatures(m, std, smoothness, third, uniformity, entropy)


def _check_window(window: int) -> int:
    w = int(window)
    if w < 3 or w % 2 == 0:
        raise ValueError(f"filter window must be odd and >= 3, got {window}")
    return w


@dataclass(frozen=True)
class FilterKind:
    """A local filter selector: kind in {'std', 'range', 'entropy'} plus window side."""

    kind: str
    window: int

    def __post_init__(self):
        if self.kind not in ("std", "range", "entropy"):
            raise ValueError(f"unknown filter kind {self.kind!r}")
        _check_window(self.window)


def _window_sums(padded: np.ndarray, window: int) -> np.ndarray:
    """Sliding-window sums of a padded array via an integral image.

    padded has shape (H + window - 1, W + window - 1); the result has one sum
    per original (H, W) pixel. Values must be integers stored as float64 so
    the cumulative sums stay exact.
    """
    s = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1))
    s[1:, 1:] = padded.cumsum(axis=0).cumsum(axis=1)
    k = window
    return s[k:, k:] - s[:-k, k:] - s[k:, :-k] + s[:-k, :-k]


def local_std(img, window: int = DEFAULT_STD_WINDOW) -> np.ndarray:
    """Sample standard deviation (n-1 divisor) of each window, borders replicated."""
    img = as_gray(img)
    w = _check_window(window)
    r = w // 2
    n = w * w
    padded = np.pad(img, r, mode="edge").astype(np.float64)
    s1 = _window_sums(padded, w)
    s2 = _window_sums(padded * padded, w)
    var = (s2 - s1 * s1 / n) / (n - 1)
    return np.sqrt(np.maximum(var, 0.0))


def local_range(img, window: int = DEFAULT_RANGE_WINDOW) -> np.ndarray:
    """Max minus min of each window in raw levels, borders replicated."""
    img = as_gray(img)
    w = _check_window(window)
    hi = ndimage.maximum_filter(img, size=w, mode="nearest")
    lo = ndimage.minimum_filter(img, size=w, mode="nearest")
    return hi.astype(np.float64) - lo


def local_entropy(img, window: int = DEFAULT_ENTROPY_WINDOW) -> np.ndarray:
    """256-bin histogram entropy (bits) of each window, borders replicated.

    Accumulates one integral image per intensity level present, so the window
    counts are exact integers.
    """
    img = as_gray(img)
    w = _check_window(window)
    r = w // 2
    n = w * w
    padded = np.pad(img, r, mode="edge")
    out = np.zeros(img.shape)
    for level in np.unique(padded):
        c = _window_sums((padded == level).astype(np.float64), w)
        nz = c > 0
        pv = c[nz] / n
        out[nz] -= pv * np.log2(pv)
    return out


def local_filter(img, selector: FilterKind) -> np.ndarray:
    """Apply the selected local filter; see local_std / local_range / local_entropy."""
    fn = {"std": local_std, "range": local_range, "entropy": local_entropy}[selector.kind]
    return fn(img, selector.window)


def extract_features(
    img,
    std_window: int = DEFAULT_STD_WINDOW,
    range_window: int = DEFAULT_RANGE_WINDOW,
    entropy_window: int = DEFAULT_ENTROPY_WINDOW,
) -> FeatureVector:
    """Compute the full nine-feature vector of a grayscale word image.

    f1..f6 describe the whole crop's intensity histogram; f7..f9 are the
    means of the local std, range, and entropy filter images.
    """
    img = as_gray(img)
    g = global_features(normalized_histogram(img))
    f7 = float(np.mean(local_std(img, std_window)))
    f8 = float(np.mean(local_range(img, range_window)))
    f9 = float(np.mean(local_entropy(img, entropy_window)))
    return FeatureVector(*g, f7, f8, f9)
