"""Dataset ingestion, feature/model persistence, and synthetic word images.

A corpus is a directory with `handwritten/` and `printed/` subdirectories of
PNG/PGM word images, optionally nested one more level by group (script) name.
Because the reference corpus is private, a seeded generator produces
printed-like and handwritten-like pseudo-words whose statistical contrasts
(stroke regularity, ink uniformity) mirror the real classes — it makes no
claim of visual realism.
"""

import csv
import json
import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classifier import KnnModel, Label, Standardizer
from .errors import ConfigError, DataError
from .features import N_FEATURES, FEATURE_COLUMNS, FeatureVector, extract_features
from .image_io import load_gray
from .imaging import Box

log = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1

_LABEL_DIRS = (("handwritten", Label.HANDWRITTEN), ("printed", Label.PRINTED))
_IMAGE_SUFFIXES = {".png", ".pgm"}

CSV_HEADER = ["path", "label", *FEATURE_COLUMNS]


@dataclass(frozen=True)
class CorpusImage:
    """One ingested word image with its directory-derived label and group."""

    path: str
    label: Label
    group: str | None
    image: np.ndarray


@dataclass(frozen=True)
class LabeledSample:
    """A feature vector with its class label and provenance path."""

    path: str
    label: Label
    features: FeatureVector
    group: str | None = None


@dataclass(frozen=True)
class IngestResult:
    images: list[CorpusImage]
    skipped: list[str]


def group_from_path(path: str) -> str | None:
    """Recover the group (script) directory from a stored sample path."""
    parts = re.split(r"[/\\]", str(path))
    for i, part in enumerate(parts):
        if part in ("handwritten", "printed") and i + 2 < len(parts):
            return parts[i + 1]
    return None


def ingest_directory(root) -> IngestResult:
    """Read every PNG/PGM under root/handwritten and root/printed.

    Paths are stored relative to root and listed in lexicographic order.
    Unreadable files are skipped with a warning and counted in the result.
    """
    root = Path(root)
    if not root.is_dir():
        raise DataError(f"{root}: no such corpus directory")
    if not any((root / name).is_dir() for name, _ in _LABEL_DIRS):
        raise DataError(f"{root}: expected a handwritten/ or printed/ subdirectory")
    images: list[CorpusImage] = []
    skipped: list[str] = []
    for name, label in _LABEL_DIRS:
        sub = root / name
        if not sub.is_dir():
            log.warning("%s: missing %s/ directory; continuing with the other class", root, name)
            continue
        files = sorted(
            (p for p in sub.rglob("*") if p.is_file() and p.suffix.lower() in _IMAGE_SUFFIXES),
            key=lambda p: str(p.relative_to(root)).encode("utf-8"),
        )
        if not files:
            log.warning("%s: no images under %s/", root, name)
        for p in files:
            rel = p.relative_to(root)
            try:
                img = load_gray(p)
            except DataError as exc:
                log.warning("skipping unreadable image: %s", exc)
                skipped.append(str(rel))
                continue
            group = rel.parts[1] if len(rel.parts) > 2 else None
            images.append(CorpusImage(path=str(rel), label=label, group=group, image=img))
    return IngestResult(images=images, skipped=skipped)


def extract_dataset(root) -> tuple[list[LabeledSample], list[str]]:
    """Ingest a corpus directory and compute features for every image."""
    result = ingest_directory(root)
    samples = []
    for item in result.images:
        fv = extract_features(item.image)
        if not all(math.isfinite(v) for v in fv):
            raise DataError(f"{item.path}: non-finite feature value")
        samples.append(
            LabeledSample(path=item.path, label=item.label, features=fv, group=item.group)
        )
    return samples, result.skipped


def features_to_csv(samples, path) -> None:
    """Write samples as CSV: path,label,f1..f9 with 17-significant-digit floats."""
    samples = list(samples)
    if not samples:
        raise ConfigError("refusing to write an empty feature CSV")
    with open(Path(path), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for s in samples:
            writer.writerow([s.path, s.label.display(), *(f"{v:.17g}" for v in s.features)])


def features_from_csv(path) -> list[LabeledSample]:
    """Read a feature CSV written by features_to_csv; errors name the line."""
    path = Path(path)
    try:
        f = open(path, "r", newline="", encoding="utf-8-sig")
    except FileNotFoundError:
        raise DataError(f"{path}: no such feature file") from None
    samples = []
    with f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            raise DataError(f"{path}:1: bad header; expected {','.join(CSV_HEADER)}")
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(CSV_HEADER):
                raise DataError(
                    f"{path}:{line}: expected {len(CSV_HEADER)} columns, got {len(row)}"
                )
            sample_path = row[0]
            try:
                label = Label.from_name(row[1])
            except ValueError as exc:
                raise DataError(f"{path}:{line}: {exc}") from None
            values = []
            for col, tok in zip(FEATURE_COLUMNS, row[2:]):
                try:
                    v = float(tok)
                except ValueError:
                    raise DataError(f"{path}:{line}: bad {col} value {tok!r}") from None
                if not math.isfinite(v):
                    raise DataError(f"{path}:{line}: non-finite {col} value {tok!r}")
                values.append(v)
            samples.append(
                LabeledSample(
                    path=sample_path,
                    label=label,
                    features=FeatureVector(*values),
                    group=group_from_path(sample_path),
                )
            )
    return samples


def save_model(model: KnnModel, path) -> None:
    """Persist a fitted k-NN model as versioned JSON."""
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "k": model.k,
        "standardizer": {
            "mean": [float(v) for v in model.standardizer.mean],
            "scale": [float(v) for v in model.standardizer.scale],
        },
        "samples": [
            {"label": Label(int(label)).display(), "features": [float(v) for v in row]}
            for row, label in zip(model.vectors, model.labels)
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


def _expect(condition: bool, path, message: str) -> None:
    if not condition:
        raise DataError(f"{path}: {message}")


def load_model(path) -> KnnModel:
    """Load a model written by save_model, validating version and schema."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataError(f"{path}: no such model file") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not valid JSON ({exc})") from None
    _expect(isinstance(doc, dict), path, "model document must be a JSON object")
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise DataError(
            f"{path}: unsupported format_version {version!r} (expected {MODEL_FORMAT_VERSION})"
        )
    k = doc.get("k")
    _expect(isinstance(k, int) and k >= 1 and k % 2 == 1, path, f"bad k: {k!r}")
    std = doc.get("standardizer")
    _expect(isinstance(std, dict), path, "missing standardizer")
    mean = std.get("mean")
    scale = std.get("scale")
    for name, vec in (("mean", mean), ("scale", scale)):
        _expect(
            isinstance(vec, list)
            and len(vec) == N_FEATURES
            and all(isinstance(v, (int, float)) and math.isfinite(v) for v in vec),
            path,
            f"standardizer {name} must be {N_FEATURES} finite numbers",
        )
    _expect(all(v > 0 for v in scale), path, "standardizer scale entries must be positive")
    raw = doc.get("samples")
    _expect(isinstance(raw, list) and len(raw) >= k, path, "need at least k training samples")
    vectors = np.empty((len(raw), N_FEATURES), dtype=np.float64)
    labels = np.empty(len(raw), dtype=np.int64)
    for i, entry in enumerate(raw):
        _expect(isinstance(entry, dict), path, f"sample {i} must be an object")
        feats = entry.get("features")
        _expect(
            isinstance(feats, list)
            and len(feats) == N_FEATURES
            and all(isinstance(v, (int, float)) and math.isfinite(v) for v in feats),
            path,
            f"sample {i} features must be {N_FEATURES} finite numbers",
        )
        try:
            labels[i] = int(Label.from_name(entry.get("label", "")))
        except ValueError as exc:
            raise DataError(f"{path}: sample {i}: {exc}") from None
        vectors[i] = feats
    standardizer = Standardizer(
        mean=np.asarray(mean, dtype=np.float64), scale=np.asarray(scale, dtype=np.float64)
    )
    return KnnModel(vectors=vectors, labels=labels, k=k, standardizer=standardizer)


# --- synthetic word generator -------------------------------------------------

# Pseudo-glyph strokes in a unit box, y = 0 at the top. Every glyph keeps a
# full-height bar on its left edge and touches its right edge near mid-height,
# so dilation reliably fuses neighboring glyphs into one word blob.
_GLYPHS = (
    # E
    (((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 0.5), (1, 0.5)), ((0, 1), (1, 1))),
    # F
    (((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 0.5), (1, 0.5))),
    # H
    (((0, 0), (0, 1)), ((1, 0), (1, 1)), ((0, 0.5), (1, 0.5))),
    # N
    (((0, 0), (0, 1)), ((0, 0), (1, 1)), ((1, 0), (1, 1))),
    # U
    (((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0))),
    # P
    (((0, 0), (0, 1)), ((0, 0), (1, 0)), ((1, 0), (1, 0.55)), ((1, 0.55), (0, 0.55))),
    # B
    (
        ((0, 0), (0, 1)),
        ((0, 0), (1, 0)),
        ((1, 0), (1, 0.5)),
        ((1, 0.5), (0, 0.5)),
        ((1, 0.5), (1, 1)),
        ((0, 1), (1, 1)),
    ),
    # M
    (((0, 1), (0, 0)), ((0, 0), (0.5, 0.5)), ((0.5, 0.5), (1, 0)), ((1, 0), (1, 1))),
)

_BG_LOW, _BG_HIGH = 245, 255
_INK_MIN, _INK_MAX = 5, 200

DEFAULT_CANVAS = (48, 168)


@dataclass(frozen=True)
class SynthesisParams:
    """Controls for one synthetic word image.

    baseline_jitter doubles as the per-vertex wobble amplitude; zero jitter,
    zero slant, a degenerate stroke-width range, and a degenerate ink range
    give perfectly regular "printed" strokes.
    """

    kind: str
    seed: int
    canvas: tuple[int, int] = DEFAULT_CANVAS
    stroke_width: tuple[int, int] = (3, 3)
    baseline_jitter: float = 0.0
    slant_jitter: float = 0.0
    ink_range: tuple[int, int] = (80, 80)

    def __post_init__(self):
        if self.kind not in ("printed", "handwritten"):
            raise ConfigError(f"kind must be 'printed' or 'handwritten', got {self.kind!r}")
        h, w = self.canvas
        if h < 1 or w < 1:
            raise ConfigError(f"canvas must be positive, got {self.canvas}")
        lo, hi = self.stroke_width
        if not 1 <= lo <= hi:
            raise ConfigError(f"bad stroke width range {self.stroke_width}")
        lo, hi = self.ink_range
        if not 0 <= lo <= hi <= _INK_MAX:
            raise ConfigError(f"ink range must satisfy 0 <= lo <= hi <= {_INK_MAX}")
        if self.baseline_jitter < 0 or self.slant_jitter < 0:
            raise ConfigError("jitter amplitudes must be non-negative")

    @classmethod
    def for_kind(cls, kind: str, seed: int, canvas: tuple[int, int] = DEFAULT_CANVAS):
        """Default parameter sets for the two classes."""
        if kind == "printed":
            return cls(kind=kind, seed=seed, canvas=canvas)
        if kind == "handwritten":
            return cls(
                kind=kind,
                seed=seed,
                canvas=canvas,
                stroke_width=(2, 4),
                baseline_jitter=3.0,
                slant_jitter=0.2,
                ink_range=(20, 100),
            )
        raise ConfigError(f"kind must be 'printed' or 'handwritten', got {kind!r}")


def _stamp_line(img, mask, pa, pb, width, ink_base, wobble, rng):
    """Paint a stroke as overlapping square stamps along the segment."""
    h, w = img.shape
    length = math.hypot(pb[0] - pa[0], pb[1] - pa[1])
    steps = max(2, int(length * 2) + 1)
    half = width // 2
    for t in np.linspace(0.0, 1.0, steps):
        cx = pa[0] + (pb[0] - pa[0]) * t
        cy = pa[1] + (pb[1] - pa[1]) * t
        ink = ink_base + rng.uniform(-wobble, wobble)
        value = int(round(min(max(ink, _INK_MIN), _INK_MAX)))
        x0 = int(round(cx)) - half
        y0 = int(round(cy)) - half
        x1, y1 = x0 + width, y0 + width
        x0, y0 = max(x0, 0), max(y0, 0)
        x1, y1 = min(x1, w), min(y1, h)
        if x0 < x1 and y0 < y1:
            img[y0:y1, x0:x1] = value
            mask[y0:y1, x0:x1] = True


def _render_word(params: SynthesisParams) -> tuple[np.ndarray, np.ndarray]:
    """Render a pseudo-word; returns the image and its exact ink mask."""
    rng = np.random.default_rng(params.seed)
    h, w = params.canvas
    img = rng.integers(_BG_LOW, _BG_HIGH + 1, size=(h, w), dtype=np.uint8)
    mask = np.zeros((h, w), dtype=bool)

    glyph_h = int(round(h * 0.58))
    glyph_w = max(6, int(round(glyph_h * 0.55)))
    margin_x, gap = 6, 4
    margin_y = (h - glyph_h) // 2
    usable = w - 2 * margin_x
    if glyph_h < 10 or usable < glyph_w:
        raise ConfigError(f"canvas {params.canvas} too small for one glyph")
    max_glyphs = (usable + gap) // (glyph_w + gap)
    n_glyphs = min(int(rng.integers(3, 9)), max_glyphs)

    ink_lo, ink_hi = params.ink_range
    wobble = (ink_hi - ink_lo) / 3.0
    width_lo, width_hi = params.stroke_width
    x = margin_x
    for _ in range(n_glyphs):
        glyph = _GLYPHS[int(rng.integers(0, len(_GLYPHS)))]
        slant = rng.uniform(-params.slant_jitter, params.slant_jitter)
        y_base = margin_y + rng.uniform(-params.baseline_jitter, params.baseline_jitter)
        vertex_sigma = 0.4 * params.baseline_jitter
        offsets = {}
        for seg in glyph:
            for vertex in seg:
                if vertex not in offsets:
                    offsets[vertex] = rng.normal(0.0, vertex_sigma, size=2) if vertex_sigma else (0.0, 0.0)

        def place(vertex):
            u, v = vertex
            dx, dy = offsets[vertex]
            return (x + u * glyph_w + slant * (1.0 - v) * glyph_h + dx, y_base + v * glyph_h + dy)

        for a, b in glyph:
            stroke = int(rng.integers(width_lo, width_hi + 1))
            ink_base = rng.uniform(ink_lo, ink_hi)
            _stamp_line(img, mask, place(a), place(b), stroke, ink_base, wobble, rng)
        x += glyph_w + gap
    return img, mask


def synthesize_word(params: SynthesisParams) -> np.ndarray:
    """Render a synthetic word image; deterministic in (params, seed)."""
    img, _ = _render_word(params)
    return img


def synthesize_page(
    words, grid: tuple[int, int], gap: tuple[int, int] = (12, 24)
) -> tuple[np.ndarray, list[Box]]:
    """Paste word images on a light page at grid positions (row-major).

    Returns the page and the ground-truth tight ink boxes, sorted the way the
    segmenter reports regions. Gaps must exceed the segmentation dilation
    window for the ground truth to be recoverable.
    """
    words = list(words)
    rows, cols = (int(v) for v in grid)
    gap_y, gap_x = (int(v) for v in gap)
    if rows < 1 or cols < 1 or gap_y < 1 or gap_x < 1:
        raise ConfigError("grid dimensions and gaps must be positive")
    if len(words) > rows * cols:
        raise ConfigError(f"{len(words)} words do not fit a {rows}x{cols} grid")
    canvas = words[0].canvas if words else DEFAULT_CANVAS
    if any(p.canvas != canvas for p in words):
        raise ConfigError("all words on a page must share one canvas size")
    word_h, word_w = canvas
    page_h = rows * word_h + (rows + 1) * gap_y
    page_w = cols * word_w + (cols + 1) * gap_x
    page = np.full((page_h, page_w), 250, dtype=np.uint8)
    boxes = []
    for i, params in enumerate(words):
        r, c = divmod(i, cols)
        img, mask = _render_word(params)
        y0 = gap_y + r * (word_h + gap_y)
        x0 = gap_x + c * (word_w + gap_x)
        page[y0 : y0 + word_h, x0 : x0 + word_w] = img
        ys, xs = np.nonzero(mask)
        boxes.append(
            Box(x0 + int(xs.min()), y0 + int(ys.min()), x0 + int(xs.max()), y0 + int(ys.max()))
        )
    boxes.sort(key=lambda b: (b.y_min, b.x_min))
    return page, boxes
