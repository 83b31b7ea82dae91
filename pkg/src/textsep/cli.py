"""Command-line interface: segment, extract, train, classify, crossval, synth.

Exit codes: 0 on success, 1 for usage/configuration errors, 2 for data errors.
"""

import argparse
import csv
import sys
from pathlib import Path

from .classifier import knn_fit, knn_predict
from .corpus import (
    SynthesisParams,
    extract_dataset,
    features_from_csv,
    features_to_csv,
    load_model,
    save_model,
    synthesize_word,
)
from .errors import ConfigError, DataError
from .evaluation import (
    cross_validate,
    format_confusion_table,
    format_per_group_table,
    format_per_k_table,
    write_report_csv,
)
from .features import extract_features
from .image_io import load_gray, save_gray
from .segmentation import SegmentationConfig, load_config, segment_words


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="textsep",
        description="Segment document pages into words and classify each as handwritten or printed.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("segment", help="split a page image into word crops")
    p.add_argument("page", help="grayscale page image (PNG or PGM)")
    p.add_argument("--out-dir", required=True, help="directory for word crops and boxes.csv")
    p.add_argument("--config", help="segmentation config file (key = value lines)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("extract", help="compute features for a labeled corpus")
    p.add_argument("root", help="corpus root containing handwritten/ and printed/")
    p.add_argument("--out", required=True, help="output feature CSV")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="fit a k-NN model from a feature CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--k", type=int, default=5, help="neighbor count (odd)")
    p.add_argument("--out", required=True, help="output model JSON")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="label word images with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("images", nargs="+", help="word images to classify")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("crossval", help="K-fold cross-validation report")
    p.add_argument("--features", required=True)
    p.add_argument("--K", type=int, default=10, help="fold count")
    p.add_argument("--k", type=int, default=5, help="neighbor count (odd)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--stratified", action="store_true", help="class-balanced folds")
    p.add_argument("--per-group", action="store_true", help="also report per group directory")
    p.add_argument("--csv", help="also write class,metric,value rows to this file")
    p.set_defaults(func=cmd_crossval)

    p = sub.add_parser("synth", help="generate synthetic word images")
    p.add_argument("--kind", required=True, choices=("printed", "handwritten"))
    p.add_argument("--n", type=int, required=True, help="number of images")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True, help="images are written to <out-dir>/<kind>/")
    p.set_defaults(func=cmd_synth)
    return parser


def cmd_segment(args) -> int:
    cfg = load_config(args.config) if args.config else SegmentationConfig()
    page = load_gray(args.page)
    regions = segment_words(page, cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "boxes.csv", "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["x_min", "y_min", "x_max", "y_max"])
        for i, region in enumerate(regions, start=1):
            save_gray(out_dir / f"word_{i:04d}.png", region.crop)
            writer.writerow(list(region.bbox))
    print(f"{args.page}: {len(regions)} words -> {out_dir}")
    return 0


def cmd_extract(args) -> int:
    samples, skipped = extract_dataset(args.root)
    if not samples:
        raise DataError(f"{args.root}: no readable word images found")
    features_to_csv(samples, args.out)
    msg = f"{args.root}: {len(samples)} samples -> {args.out}"
    if skipped:
        msg += f" ({len(skipped)} unreadable files skipped)"
    print(msg)
    return 0


def cmd_train(args) -> int:
    samples = features_from_csv(args.features)
    model = knn_fit(
        [tuple(s.features) for s in samples], [s.label for s in samples], k=args.k
    )
    save_model(model, args.out)
    print(f"{args.features}: trained k={args.k} model on {len(samples)} samples -> {args.out}")
    return 0


def cmd_classify(args) -> int:
    model = load_model(args.model)
    for image_path in args.images:
        img = load_gray(image_path)
        label, neighbors = knn_predict(model, extract_features(img))
        print(f"{image_path},{label.display()},{neighbors[0].distance:.6f}")
    return 0


def cmd_crossval(args) -> int:
    samples = features_from_csv(args.features)
    report = cross_validate(
        samples, K=args.K, k=args.k, seed=args.seed, stratified=args.stratified
    )
    print(f"{args.K}-fold cross-validation ({report.rng} seed {args.seed})")
    print()
    print(format_per_k_table([report]))
    print()
    print("Confusion matrix (rows = truth)")
    print(format_confusion_table(report))
    if args.per_group:
        groups = sorted({s.group for s in samples if s.group is not None})
        reports = {}
        for g in groups:
            subset = [s for s in samples if s.group == g]
            labels = {s.label for s in subset}
            if len(labels) < 2 or len(subset) < args.K:
                print(f"\nskipping group {g!r}: not enough samples of both classes")
                continue
            reports[g] = cross_validate(
                subset, K=args.K, k=args.k, seed=args.seed, stratified=args.stratified
            )
        if reports:
            print("\nPer-group accuracy")
            print(format_per_group_table(reports))
        elif not groups:
            print("\nno group directories found; skipping per-group report")
    if args.csv:
        write_report_csv(report, args.csv)
        print(f"\nwrote {args.csv}")
    return 0


def cmd_synth(args) -> int:
    if args.n < 1:
        raise ConfigError(f"--n must be >= 1, got {args.n}")
    out_dir = Path(args.out_dir) / args.kind
    out_dir.mkdir(parents=True, exist_ok=True)
    for i in range(args.n):
        params = SynthesisParams.for_kind(args.kind, seed=args.seed + i)
        save_gray(out_dir / f"word_{i + 1:04d}.png", synthesize_word(params))
    print(f"wrote {args.n} {args.kind} word images to {out_dir}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"textsep: error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"textsep: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
