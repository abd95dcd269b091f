"""Image directory to feature file conversion via vision backbones."""

from .backbones import (BACKBONES, BackboneInfo, ChecksumError,
                        backbone_info, load_backbone)
from .extract import ExtractionError, ExtractionJob, ExtractionResult, extract

__all__ = [
    "BACKBONES",
    "BackboneInfo",
    "ChecksumError",
    "ExtractionError",
    "ExtractionJob",
    "ExtractionResult",
    "backbone_info",
    "extract",
    "load_backbone",
]
