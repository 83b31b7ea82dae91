"""Independent brute-force reference implementations used by the tests.

Everything here recomputes results the slow, obvious way (per-pixel loops,
exhaustive scans, flood fill, exactly rounded fsum accumulation) so the
library can be checked against a second route.
"""

import math
from collections import Counter, deque

import numpy as np


def oracle_histogram(img):
    counts = [0] * 256
    for row in np.asarray(img):
        for v in row:
            counts[int(v)] += 1
    return counts


def oracle_otsu(hist):
    """Exhaustive scan: recompute both class masses and means for every t."""
    counts = np.asarray(hist, dtype=np.float64)
    levels = np.arange(256, dtype=np.float64)
    # each row t sums counts[0..t] from scratch (lower-triangular mask)
    tri = np.tril(np.ones((256, 256)))
    w0 = tri @ counts
    w1 = counts.sum() - w0
    m0_sum = tri @ (counts * levels)
    m1_sum = (counts * levels).sum() - m0_sum
    best_t, best_sigma = 0, -1.0
    for t in range(256):
        if w0[t] == 0 or w1[t] == 0:
            sigma = 0.0
        else:
            d = m0_sum[t] / w0[t] - m1_sum[t] / w1[t]
            sigma = w0[t] * w1[t] * d * d
        if sigma > best_sigma:
            best_t, best_sigma = t, sigma
    return best_t


def oracle_binarize(img, t, polarity):
    img = np.asarray(img)
    out = np.zeros(img.shape, dtype=bool)
    for y in range(img.shape[0]):
        for x in range(img.shape[1]):
            v = int(img[y, x])
            out[y, x] = v <= t if polarity == "dark" else v > t
    return out


def _window_hits(mask, y, x, se_w, se_h):
    hits = []
    for dy in range(-(se_h // 2), se_h // 2 + 1):
        for dx in range(-(se_w // 2), se_w // 2 + 1):
            yy, xx = y + dy, x + dx
            if 0 <= yy < mask.shape[0] and 0 <= xx < mask.shape[1]:
                hits.append(bool(mask[yy, xx]))
            else:
                hits.append(False)
    return hits


def oracle_dilate(mask, se_w, se_h):
    mask = np.asarray(mask, dtype=bool)
    out = np.zeros_like(mask)
    for y in range(mask.shape[0]):
        for x in range(mask.shape[1]):
            out[y, x] = any(_window_hits(mask, y, x, se_w, se_h))
    return out


def oracle_erode(mask, se_w, se_h):
    mask = np.asarray(mask, dtype=bool)
    out = np.zeros_like(mask)
    for y in range(mask.shape[0]):
        for x in range(mask.shape[1]):
            out[y, x] = all(_window_hits(mask, y, x, se_w, se_h))
    return out


def oracle_flood_components(mask, connectivity=8):
    """Flood-fill partition of the foreground; returns a list of pixel sets."""
    mask = np.asarray(mask, dtype=bool)
    if connectivity == 8:
        steps = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    else:
        steps = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    seen = np.zeros_like(mask)
    components = []
    for y in range(mask.shape[0]):
        for x in range(mask.shape[1]):
            if not mask[y, x] or seen[y, x]:
                continue
            pixels = set()
            queue = deque([(y, x)])
            seen[y, x] = True
            while queue:
                cy, cx = queue.popleft()
                pixels.add((cy, cx))
                for dy, dx in steps:
                    ny, nx = cy + dy, cx + dx
                    if (
                        0 <= ny < mask.shape[0]
                        and 0 <= nx < mask.shape[1]
                        and mask[ny, nx]
                        and not seen[ny, nx]
                    ):
                        seen[ny, nx] = True
                        queue.append((ny, nx))
            components.append(pixels)
    return components


def oracle_global_features(img):
    """f1..f6 recomputed directly from pixel counts with fsum accumulation."""
    img = np.asarray(img)
    n = img.size
    counts = oracle_histogram(img)
    p = [counts[i] / n for i in range(256)]
    z = [i / 255 for i in range(256)]
    m = math.fsum(z[i] * p[i] for i in range(256))
    d = [z[i] - m for i in range(256)]
    var = math.fsum(d[i] * d[i] * p[i] for i in range(256))
    std = math.sqrt(var)
    smooth = 1.0 - 1.0 / (1.0 + var)
    third = math.fsum(d[i] * d[i] * d[i] * p[i] for i in range(256))
    uniformity = math.fsum(p[i] * p[i] for i in range(256))
    entropy = -math.fsum(p[i] * math.log2(p[i]) for i in range(256) if p[i] > 0) + 0.0
    return (m, std, smooth, third, uniformity, entropy)


def _replicated_window(img, y, x, window):
    r = window // 2
    h, w = img.shape
    values = []
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            yy = min(max(y + dy, 0), h - 1)
            xx = min(max(x + dx, 0), w - 1)
            values.append(int(img[yy, xx]))
    return values


def oracle_local_std(img, window=3):
    img = np.asarray(img)
    out = np.zeros(img.shape)
    n = window * window
    for y in range(img.shape[0]):
        for x in range(img.shape[1]):
            vals = _replicated_window(img, y, x, window)
            mean = math.fsum(vals) / n
            var = math.fsum((v - mean) ** 2 for v in vals) / (n - 1)
            out[y, x] = math.sqrt(var)
    return out


def oracle_local_range(img, window=3):
    img = np.asarray(img)
    out = np.zeros(img.shape)
    for y in range(img.shape[0]):
        for x in range(img.shape[1]):
            vals = _replicated_window(img, y, x, window)
            out[y, x] = max(vals) - min(vals)
    return out


def oracle_local_entropy(img, window=9):
    img = np.asarray(img)
    out = np.zeros(img.shape)
    n = window * window
    for y in range(img.shape[0]):
        for x in range(img.shape[1]):
            tally = Counter(_replicated_window(img, y, x, window))
            out[y, x] = -math.fsum((c / n) * math.log2(c / n) for c in tally.values()) + 0.0
    return out


def oracle_mean_std(samples):
    """Two-pass per-feature mean and population standard deviation."""
    x = np.asarray(samples, dtype=np.float64)
    n, d = x.shape
    means, stds = [], []
    for j in range(d):
        mean = math.fsum(x[i, j] for i in range(n)) / n
        var = math.fsum((x[i, j] - mean) ** 2 for i in range(n)) / n
        means.append(mean)
        stds.append(math.sqrt(var))
    return means, stds


def oracle_knn_ranking(train_x, train_y, query):
    """Naive full scan: standardize, then rank all training indices by (distance, index)."""
    train_x = np.asarray(train_x, dtype=np.float64)
    means, stds = oracle_mean_std(train_x)
    scales = [s if s >= 1e-12 else 1.0 for s in stds]

    def scale(row):
        return [(row[j] - means[j]) / scales[j] for j in range(len(means))]

    q = scale(np.asarray(query, dtype=np.float64))
    scored = []
    for i in range(len(train_x)):
        r = scale(train_x[i])
        d2 = math.fsum((r[j] - q[j]) ** 2 for j in range(len(q)))
        scored.append((d2, i))
    scored.sort()
    return [i for _, i in scored]


def oracle_vote(train_y, nearest):
    """Majority vote with the nearest neighbor's class as the tie fallback."""
    votes = Counter(int(train_y[i]) for i in nearest)
    top = max(votes.values())
    winners = [c for c, v in votes.items() if v == top]
    return winners[0] if len(winners) == 1 else int(train_y[nearest[0]])


def oracle_knn(train_x, train_y, query, k):
    """Full scan-and-sort prediction: (label_code, neighbor indices by distance)."""
    nearest = oracle_knn_ranking(train_x, train_y, query)[:k]
    return oracle_vote(train_y, nearest), nearest
