"""Command line entry point for feature extraction."""

from __future__ import annotations

import argparse
import sys

from .backbones import BACKBONES, ChecksumError
from .extract import ExtractionError, ExtractionJob, extract


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extract-features",
        description="Convert an image directory into a binary feature "
                    "file readable by the prd CLI.")
    parser.add_argument("image_dir", help="directory of images")
    parser.add_argument("--backbone", choices=BACKBONES,
                        default="inception-pool")
    parser.add_argument("--out", required=True,
                        help="output feature file path")
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--weights", default=None,
                        help="local checkpoint with pretrained weights; "
                             "without it, seeded deterministic random "
                             "weights are used")
    parser.add_argument("--weights-sha256", default=None,
                        help="expected SHA-256 of the checkpoint")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        job = ExtractionJob(args.image_dir, args.backbone, args.out,
                            args.batch_size, args.weights,
                            args.weights_sha256)
        result = extract(job)
    except (ExtractionError, ChecksumError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(result.filenames)} x {result.feature_dim} "
          f"features to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
