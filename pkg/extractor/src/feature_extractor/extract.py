"""Image directory to binary feature file."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch
from PIL import Image, UnidentifiedImageError

from prdcurves import SampleSet
from prdcurves.fileio import save_features

from .backbones import CHANNEL_MEAN, CHANNEL_STD, backbone_info, load_backbone

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".gif", ".tiff", ".webp"}


class ExtractionError(ValueError):
    """The job cannot produce any feature rows."""


@dataclass(frozen=True)
class ExtractionJob:
    """A single extraction run.

    image_dir must exist and contain at least one decodable image;
    undecodable files are skipped with a warning and recorded in the
    manifest sidecar.
    """

    image_dir: str
    backbone: str
    output_path: str
    batch_size: int = 32
    weights: str | None = None
    weights_sha256: str | None = None

    def __post_init__(self):
        backbone_info(self.backbone)
        if self.batch_size < 1:
            raise ValueError("batch_size must be a positive integer")
        if not Path(self.image_dir).is_dir():
            raise ExtractionError(f"image directory not found: "
                                  f"{self.image_dir}")


@dataclass
class ExtractionResult:
    """Rows written and files skipped, in row order."""

    filenames: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    feature_dim: int = 0


def _candidate_files(image_dir: str) -> list:
    """Regular files with an image suffix, lexicographic by filename."""
    root = Path(image_dir)
    names = [p.name for p in root.iterdir()
             if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES]
    return sorted(names)


def _load_image(path: Path, size: int) -> np.ndarray:
    with Image.open(path) as img:
        rgb = img.convert("RGB").resize((size, size), Image.BILINEAR)
    arr = np.asarray(rgb, dtype=np.float32) / 255.0
    arr = (arr - np.asarray(CHANNEL_MEAN, dtype=np.float32)) / \
        np.asarray(CHANNEL_STD, dtype=np.float32)
    return arr.transpose(2, 0, 1)


def extract(job: ExtractionJob) -> ExtractionResult:
    """Run the job: write the binary feature file and manifest sidecar.

    The output is deterministic and independent of batch size; rows
    follow sorted filename order.
    """
    info = backbone_info(job.backbone)
    names = _candidate_files(job.image_dir)
    root = Path(job.image_dir)

    loaded = []
    result = ExtractionResult(feature_dim=info.feature_dim)
    for name in names:
        try:
            loaded.append(_load_image(root / name, info.input_size))
            result.filenames.append(name)
        except (UnidentifiedImageError, OSError) as exc:
            print(f"warning: skipping undecodable image {name}: {exc}",
                  file=sys.stderr)
            result.skipped.append(name)
    if not loaded:
        raise ExtractionError(
            f"no decodable images in {job.image_dir}")

    model = load_backbone(job.backbone, job.weights, job.weights_sha256)
    rows = []
    with torch.no_grad():
        for start in range(0, len(loaded), job.batch_size):
            batch = torch.from_numpy(
                np.stack(loaded[start:start + job.batch_size]))
            rows.append(model(batch).numpy().astype(np.float32))
    features = np.concatenate(rows, axis=0)

    save_features(SampleSet(features.astype(np.float64)), job.output_path,
                  fmt="binary")
    manifest = {
        "backbone": job.backbone,
        "feature_dim": info.feature_dim,
        "rows": {name: i for i, name in enumerate(result.filenames)},
        "skipped": result.skipped,
    }
    manifest_path = job.output_path + ".manifest.json"
    Path(manifest_path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return result
