"""Grayscale and binary raster primitives.

Images are plain numpy arrays: a grayscale image is a non-empty 2-D
``uint8`` array (row-major, intensities 0..255) and a binary image is a
2-D ``bool`` array where True marks foreground ink. Every function here is
a pure function of its inputs and never mutates them, so concurrent use on
shared (read-only) images is safe.
"""

import numpy as np
from dataclasses import dataclass
from typing import NamedTuple

from scipy import ndimage

from .errors import ConfigError

GRAY_LEVELS = 256


class Box(NamedTuple):
    """Inclusive pixel rectangle (x_max/y_max are the last covered pixels)."""

    x_min: int
    y_min: int
    x_max: int
    y_max: int

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1


@dataclass(frozen=True)
class Component:
    """One connected foreground region of a binary image.

    ``label`` is the region's id in the label map produced by
    :func:`label_map`, so components can be correlated with pixels.
    """

    label: int
    bbox: Box
    area: int

    @property
    def width(self) -> int:
        return self.bbox.width

    @property
    def height(self) -> int:
        return self.bbox.height


@dataclass(frozen=True)
class StructuringElement:
    """Solid rectangular morphology window, centered origin, odd sides."""

    width: int = 3
    height: int = 3

    def __post_init__(self):
        for name, v in (("width", self.width), ("height", self.height)):
            if v < 1 or v % 2 == 0:
                raise ConfigError(f"structuring element {name} must be odd and >= 1, got {v}")

    def footprint(self) -> np.ndarray:
        return np.ones((self.height, self.width), dtype=bool)


def as_gray(img) -> np.ndarray:
    """Validate and return a grayscale image as a 2-D uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("grayscale image must be a non-empty 2-D array")
    if arr.dtype == np.uint8:
        return arr
    if np.issubdtype(arr.dtype, np.integer):
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("integer image values must lie in [0, 255]")
        return arr.astype(np.uint8)
    raise ValueError(f"unsupported grayscale dtype {arr.dtype}")


def as_binary(img) -> np.ndarray:
    """Validate and return a binary image as a 2-D bool array."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("binary image must be a non-empty 2-D array")
    if arr.dtype == bool:
        return arr
    if np.issubdtype(arr.dtype, np.integer):
        vals = np.unique(arr)
        if not np.isin(vals, (0, 1)).all():
            raise ValueError("integer binary image may only contain 0 and 1")
        return arr.astype(bool)
    raise ValueError(f"unsupported binary dtype {arr.dtype}")


def _as_histogram(hist) -> np.ndarray:
    counts = np.asarray(hist)
    if counts.shape != (GRAY_LEVELS,):
        raise ValueError(f"histogram must have {GRAY_LEVELS} bins, got shape {counts.shape}")
    if not np.issubdtype(counts.dtype, np.integer):
        raise ValueError("histogram counts must be integers")
    if (counts < 0).any():
        raise ValueError("histogram counts must be non-negative")
    if counts.sum() < 1:
        raise ValueError("histogram must count at least one pixel")
    return counts.astype(np.int64)


def histogram(img) -> np.ndarray:
    """Count pixels per intensity level; returns 256 int64 counts."""
    img = as_gray(img)
    return np.bincount(img.ravel(), minlength=GRAY_LEVELS).astype(np.int64)


def otsu_threshold(hist) -> int:
    """Pick the threshold maximizing between-class variance of the histogram.

    Level t splits pixels into class 0 (levels <= t) and class 1 (levels > t);
    the returned t maximizes  w0 * w1 * (mu0 - mu1)^2,  with a class of zero
    mass contributing zero variance. Ties resolve to the smallest t, so a
    single-level histogram yields t = 0.
    """
    counts = _as_histogram(hist).astype(np.float64)
    levels = np.arange(GRAY_LEVELS, dtype=np.float64)
    w0 = np.cumsum(counts)
    w1 = w0[-1] - w0
    first = np.cumsum(counts * levels)
    mu0 = np.divide(first, w0, out=np.zeros(GRAY_LEVELS), where=w0 > 0)
    mu1 = np.divide(first[-1] - first, w1, out=np.zeros(GRAY_LEVELS), where=w1 > 0)
    d = mu0 - mu1
    sigma_b = np.where((w0 > 0) & (w1 > 0), w0 * w1 * d * d, 0.0)
    return int(np.argmax(sigma_b))


def binarize(img, threshold: int, polarity: str = "dark") -> np.ndarray:
    """Threshold a grayscale image into a boolean foreground mask.

    polarity "dark" marks pixels <= threshold as foreground (ink on paper);
    "light" marks pixels > threshold.
    """
    img = as_gray(img)
    t = int(threshold)
    if not 0 <= t <= 255:
        raise ValueError(f"threshold must lie in [0, 255], got {threshold}")
    if polarity == "dark":
        return img <= t
    if polarity == "light":
        return img > t
    raise ConfigError(f"polarity must be 'dark' or 'light', got {polarity!r}")


def dilate(mask, se: StructuringElement) -> np.ndarray:
    """Grow foreground: output pixel on iff the window over it covers any input pixel."""
    return ndimage.binary_dilation(as_binary(mask), structure=se.footprint(), border_value=0)


def erode(mask, se: StructuringElement) -> np.ndarray:
    """Shrink foreground: output pixel on iff the window over it is fully covered."""
    return ndimage.binary_erosion(as_binary(mask), structure=se.footprint(), border_value=0)


def opening(mask, se: StructuringElement) -> np.ndarray:
    """Erosion followed by dilation; removes features smaller than the window."""
    return dilate(erode(mask, se), se)


def _structure(connectivity: int) -> np.ndarray:
    if connectivity == 4:
        return ndimage.generate_binary_structure(2, 1)
    if connectivity == 8:
        return np.ones((3, 3), dtype=bool)
    raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")


def label_map(mask, connectivity: int = 8) -> tuple[np.ndarray, int]:
    """Label connected foreground regions; returns (label image, region count)."""
    labels, n = ndimage.label(as_binary(mask), structure=_structure(connectivity))
    return labels, int(n)


def connected_components(mask, connectivity: int = 8) -> list[Component]:
    """Extract connected foreground regions, sorted by (y_min, x_min)."""
    labels, n = label_map(mask, connectivity)
    if n == 0:
        return []
    areas = np.bincount(labels.ravel(), minlength=n + 1)
    comps = []
    for i, sl in enumerate(ndimage.find_objects(labels), start=1):
        rows, cols = sl
        bbox = Box(cols.start, rows.start, cols.stop - 1, rows.stop - 1)
        comps.append(Component(label=i, bbox=bbox, area=int(areas[i])))
    comps.sort(key=lambda c: (c.bbox.y_min, c.bbox.x_min))
    return comps


def crop(img, bbox) -> np.ndarray:
    """Copy the sub-image under an inclusive bounding box."""
    img = as_gray(img)
    x_min, y_min, x_max, y_max = (int(v) for v in bbox)
    h, w = img.shape
    if not (0 <= x_min <= x_max < w and 0 <= y_min <= y_max < h):
        raise ValueError(f"bbox {tuple(bbox)} out of bounds for {w}x{h} image")
    return img[y_min : y_max + 1, x_min : x_max + 1].copy()
