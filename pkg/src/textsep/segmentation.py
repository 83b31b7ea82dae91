"""Word segmentation of scanned document pages.

Three-step pipeline: global-threshold binarization (dark ink as foreground),
cleanup of punctuation-scale specks and ruled lines, then a horizontal
dilation that fuses the glyphs of each word into one blob. Word bounding
boxes are the tight boxes of the original (pre-dilation) ink inside each
blob, since the dilation is only a grouping device.
"""

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy import ndimage

from .errors import ConfigError
from .imaging import (
    Box,
    StructuringElement,
    as_binary,
    as_gray,
    binarize,
    crop,
    dilate,
    histogram,
    label_map,
    otsu_threshold,
)


@dataclass(frozen=True)
class SegmentationConfig:
    """Tuning knobs of the segmentation pipeline.

    The defaults suit 300-dpi scans; anything that matters to a caller should
    be passed explicitly.
    """

    min_component_area: int = 15
    line_aspect_min: float = 10.0
    line_span_frac: float = 0.5
    dilation_se: StructuringElement = field(default_factory=lambda: StructuringElement(7, 3))
    min_word_area: int = 30

    def __post_init__(self):
        if self.min_component_area < 1:
            raise ConfigError(f"min_component_area must be >= 1, got {self.min_component_area}")
        if self.line_aspect_min <= 1:
            raise ConfigError(f"line_aspect_min must be > 1, got {self.line_aspect_min}")
        if not 0 < self.line_span_frac <= 1:
            raise ConfigError(f"line_span_frac must lie in (0, 1], got {self.line_span_frac}")
        if self.min_word_area < 1:
            raise ConfigError(f"min_word_area must be >= 1, got {self.min_word_area}")


@dataclass(frozen=True)
class WordRegion:
    """A segmented word: tight ink bbox on the page plus its grayscale crop."""

    bbox: Box
    crop: np.ndarray


_CONFIG_KEYS = (
    "min_component_area",
    "line_aspect_min",
    "line_span_frac",
    "dilation_width",
    "dilation_height",
    "min_word_area",
)


def save_config(cfg: SegmentationConfig, path) -> None:
    """Write the config as one `key = value` per line."""
    lines = [
        f"min_component_area = {cfg.min_component_area}",
        f"line_aspect_min = {cfg.line_aspect_min:g}",
        f"line_span_frac = {cfg.line_span_frac:g}",
        f"dilation_width = {cfg.dilation_se.width}",
        f"dilation_height = {cfg.dilation_se.height}",
        f"min_word_area = {cfg.min_word_area}",
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_config(path) -> SegmentationConfig:
    """Parse a flat `key = value` config file; unknown keys are errors."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such config file") from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.fullmatch(r"(\w+)\s*=\s*(\S+)", line)
        if m is None:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = m.group(1), m.group(2)
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = float(value) if key in ("line_aspect_min", "line_span_frac") else int(value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    cfg = SegmentationConfig()
    se_w = values.pop("dilation_width", cfg.dilation_se.width)
    se_h = values.pop("dilation_height", cfg.dilation_se.height)
    return replace(cfg, dilation_se=StructuringElement(se_w, se_h), **values)


def remove_small_components(mask, min_area: int) -> np.ndarray:
    """Erase connected regions whose area is below min_area (8-connected)."""
    min_area = int(min_area)
    if min_area < 1:
        raise ValueError(f"min_area must be >= 1, got {min_area}")
    mask = as_binary(mask)
    labels, n = label_map(mask, connectivity=8)
    if n == 0:
        return mask.copy()
    areas = np.bincount(labels.ravel(), minlength=n + 1)
    keep = areas >= min_area
    keep[0] = False
    return keep[labels]


def remove_long_lines(mask, cfg: SegmentationConfig) -> np.ndarray:
    """Erase ruled-line components: extreme bbox aspect plus a page-scale span."""
    mask = as_binary(mask)
    page_h, page_w = mask.shape
    labels, n = label_map(mask, connectivity=8)
    if n == 0:
        return mask.copy()
    keep = np.ones(n + 1, dtype=bool)
    keep[0] = False
    for i, sl in enumerate(ndimage.find_objects(labels), start=1):
        rows, cols = sl
        h = rows.stop - rows.start
        w = cols.stop - cols.start
        long_side, short_side = (w, h) if w >= h else (h, w)
        span = page_w if w >= h else page_h
        if long_side / short_side >= cfg.line_aspect_min and long_side >= cfg.line_span_frac * span:
            keep[i] = False
    return keep[labels]


def segment_words(page, cfg: SegmentationConfig | None = None) -> list[WordRegion]:
    """Extract word regions from a grayscale page, in reading order.

    Pipeline: Otsu binarization (dark foreground), small-component and
    long-line removal, dilation, 8-connected labeling, then a minimum-area
    filter on the dilated blobs. Each surviving blob yields the tight bbox of
    the pre-dilation ink it contains and the grayscale crop under that bbox.
    """
    page = as_gray(page)
    if cfg is None:
        cfg = SegmentationConfig()
    ink = binarize(page, otsu_threshold(histogram(page)), polarity="dark")
    ink = remove_small_components(ink, cfg.min_component_area)
    ink = remove_long_lines(ink, cfg)
    if not ink.any():
        return []
    blobs = dilate(ink, cfg.dilation_se)
    labels, n = label_map(blobs, connectivity=8)
    areas = np.bincount(labels.ravel(), minlength=n + 1)

    ys, xs = np.nonzero(ink)
    owner = labels[ys, xs]
    big = np.iinfo(np.int64).max
    x_min = np.full(n + 1, big, dtype=np.int64)
    y_min = np.full(n + 1, big, dtype=np.int64)
    x_max = np.full(n + 1, -1, dtype=np.int64)
    y_max = np.full(n + 1, -1, dtype=np.int64)
    np.minimum.at(x_min, owner, xs)
    np.minimum.at(y_min, owner, ys)
    np.maximum.at(x_max, owner, xs)
    np.maximum.at(y_max, owner, ys)

    regions = []
    for i in range(1, n + 1):
        if areas[i] < cfg.min_word_area or x_max[i] < 0:
            continue
        bbox = Box(int(x_min[i]), int(y_min[i]), int(x_max[i]), int(y_max[i]))
        regions.append(WordRegion(bbox=bbox, crop=crop(page, bbox)))
    regions.sort(key=lambda r: (r.bbox.y_min, r.bbox.x_min))
    return regions
