"""Reading and writing 8-bit grayscale images (PNG and binary PGM).

Color inputs are reduced to luminance with the BT.601 weights
round(0.299 R + 0.587 G + 0.114 B); anything that is not 8 bits per
channel is rejected.
"""

import numpy as np
from pathlib import Path

from PIL import Image, UnidentifiedImageError

from .errors import DataError
from .imaging import as_gray

_SUFFIXES = {".png", ".pgm"}


def to_luminance(rgb: np.ndarray) -> np.ndarray:
    """Collapse an (H, W, 3) uint8 array to rounded BT.601 luminance."""
    rgb = np.asarray(rgb, dtype=np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.floor(y + 0.5).clip(0, 255).astype(np.uint8)


def load_gray(path) -> np.ndarray:
    """Load a PNG or PGM file as a 2-D uint8 grayscale image."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode == "L":
                return np.asarray(im, dtype=np.uint8)
            if im.mode in ("1",):
                return np.asarray(im.convert("L"), dtype=np.uint8)
            if im.mode in ("RGB", "RGBA", "P", "LA", "PA"):
                return to_luminance(np.asarray(im.convert("RGB")))
            raise DataError(f"{path}: unsupported image mode {im.mode!r}; 8-bit images required")
    except FileNotFoundError:
        raise DataError(f"{path}: no such file") from None
    except (UnidentifiedImageError, OSError) as exc:
        raise DataError(f"{path}: cannot decode image ({exc})") from exc


def save_gray(path, img) -> None:
    """Write a grayscale image as PNG or binary PGM, by file suffix."""
    path = Path(path)
    if path.suffix.lower() not in _SUFFIXES:
        raise DataError(f"{path}: unsupported output format {path.suffix!r} (use .png or .pgm)")
    Image.fromarray(as_gray(img), mode="L").save(path)
