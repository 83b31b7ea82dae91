"""
The nine texture features, from closed forms to class contrast
==============================================================

Walks the feature extractor through inputs whose feature values are known in
closed form, then measures how the features separate printed-like from
handwritten-like synthetic words.
"""

import numpy as np

from textsep import (
    SynthesisParams,
    extract_features,
    global_features,
    normalized_histogram,
    synthesize_word,
)
from textsep.features import FEATURE_COLUMNS

# --- 1. closed-form sanity checks --------------------------------------------

# A constant image has no texture at all: every spread measure is zero,
# uniformity is 1, and the mean is the level on the 0..1 axis.
constant = np.full((10, 10), 128, dtype=np.uint8)
print("constant 128 image :", [round(v, 6) for v in extract_features(constant)])

# A 50/50 split between black and white is the most "contrasty" histogram:
# std hits its maximum 0.5, smoothness its maximum 0.2, entropy is 1 bit.
two_point = np.array([[0, 255]], dtype=np.uint8)
print("two-point histogram:", [round(v, 6) for v in global_features(normalized_histogram(two_point))])

# One pixel of every level: entropy reaches its 8-bit ceiling.
uniform = np.arange(256, dtype=np.uint8).reshape(16, 16)
g = global_features(normalized_histogram(uniform))
print(f"uniform histogram  : entropy = {g.entropy:.1f} bits, uniformity = 1/256")

# --- 2. what separates the two classes ----------------------------------------

# Printed-like words use one ink level and rigid strokes; handwritten-like
# words wobble in position, width, and ink intensity. Feature means over a
# seeded sample show where the signal lives.
n = 60
means = {}
for kind in ("printed", "handwritten"):
    rows = [
        extract_features(synthesize_word(SynthesisParams.for_kind(kind, seed=500 + i)))
        for i in range(n)
    ]
    means[kind] = np.mean(np.array(rows), axis=0)

print(f"\nper-class feature means over {n} words each:")
print(f"{'feature':<10} {'printed':>12} {'handwritten':>12} {'ratio':>8}")
for name, pr, hw in zip(FEATURE_COLUMNS, means["printed"], means["handwritten"]):
    ratio = hw / pr if pr else float("inf")
    print(f"{name:<10} {pr:>12.4f} {hw:>12.4f} {ratio:>8.2f}")

print("\nhandwritten words carry more local variation (f7, f9) and a wider")
print("ink histogram (f2, f6); printed words are more uniform (f5).")
