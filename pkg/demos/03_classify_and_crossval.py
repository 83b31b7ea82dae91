"""
k-NN classification and the K-fold evaluation harness
=====================================================

Generates a balanced synthetic corpus, shows single-word classification with
a fitted model, then runs 10-fold cross-validation for k = 1, 3, 5, 7 and
prints the accuracy and confusion tables the evaluation module produces.
"""

from textsep import (
    LabeledSample,
    Label,
    SynthesisParams,
    cross_validate,
    extract_features,
    format_report,
    knn_fit,
    knn_predict,
    synthesize_word,
)

# --- 1. build a labeled dataset -------------------------------------------------

n_per_class = 80
dataset = []
for kind, label in (("printed", Label.PRINTED), ("handwritten", Label.HANDWRITTEN)):
    for i in range(n_per_class):
        img = synthesize_word(SynthesisParams.for_kind(kind, seed=1000 + i))
        dataset.append(
            LabeledSample(path=f"{kind}/{i:03d}", label=label, features=extract_features(img))
        )
print(f"dataset: {len(dataset)} words ({n_per_class} per class)")

# --- 2. classify a few unseen words ----------------------------------------------

model = knn_fit([s.features for s in dataset], [s.label for s in dataset], k=5)
print("\nfresh words against a k=5 model:")
for kind in ("printed", "handwritten"):
    for seed in (9001, 9002):
        img = synthesize_word(SynthesisParams.for_kind(kind, seed=seed))
        label, neighbors = knn_predict(model, extract_features(img))
        print(
            f"  generated {kind:<12} -> predicted {label.display():<12}"
            f" (nearest neighbor at distance {neighbors[0].distance:.3f})"
        )

# --- 3. cross-validate across k ----------------------------------------------------

reports = [cross_validate(dataset, K=10, k=k, seed=42) for k in (1, 3, 5, 7)]
print("\n10-fold cross-validation accuracy (%):\n")
print(format_report(reports, "per-k-table"))

best = max(reports, key=lambda r: r.accuracy_average)
print(f"\nconfusion matrix for k = {best.k} (rows = truth):\n")
print(format_report(best, "confusion-table"))
