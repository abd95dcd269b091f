"""Vision backbones producing fixed-length feature vectors.

Two backbones are supported:

- ``inception-pool``: Inception v3; the feature is the final global
  average pooling vector (d=2048), the layer commonly used for
  distribution comparison of image sets.
- ``vggface-conv``: the convolutional part of the VGG-16 architecture
  used by VGG-Face; activations of the last convolutional block are
  spatially average-pooled to a fixed-length vector (d=512).

Pretrained weights are supplied as a local checkpoint pinned by SHA-256
checksum. When no checkpoint is given, the backbone is initialized with
seeded deterministic random weights so that extraction remains fully
reproducible; the resulting features are untrained but structurally
identical, which is sufficient for pipeline and format testing.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import torch
from torch import nn
from torchvision import models

BACKBONES = ("inception-pool", "vggface-conv")

# ImageNet channel statistics, the convention both backbones were
# trained with.
CHANNEL_MEAN = (0.485, 0.456, 0.406)
CHANNEL_STD = (0.229, 0.224, 0.225)

WEIGHT_SEED = 0


@dataclass(frozen=True)
class BackboneInfo:
    """Static properties of a backbone."""

    name: str
    input_size: int
    feature_dim: int


INFO = {
    "inception-pool": BackboneInfo("inception-pool", 299, 2048),
    "vggface-conv": BackboneInfo("vggface-conv", 224, 512),
}


class ChecksumError(ValueError):
    """A weight checkpoint does not match its pinned checksum."""


def backbone_info(name: str) -> BackboneInfo:
    if name not in INFO:
        raise ValueError(f"unknown backbone {name!r}, "
                         f"expected one of {BACKBONES}")
    return INFO[name]


class _InceptionPool(nn.Module):
    def __init__(self):
        super().__init__()
        net = models.inception_v3(weights=None, aux_logits=True,
                                  init_weights=False)
        net.fc = nn.Identity()
        net.AuxLogits = None
        net.aux_logits = False
        self.net = net

    def forward(self, x):
        return self.net(x)


class _VGGConvPool(nn.Module):
    def __init__(self):
        super().__init__()
        self.features = models.vgg16(weights=None).features
        self.pool = nn.AdaptiveAvgPool2d(1)

    def forward(self, x):
        return self.pool(self.features(x)).flatten(1)


def _verify_checksum(path: str, expected: str) -> None:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    actual = digest.hexdigest()
    if actual != expected.lower():
        raise ChecksumError(
            f"checkpoint {path} has sha256 {actual}, expected {expected}")


def load_backbone(name: str, weights: str | None = None,
                  weights_sha256: str | None = None) -> nn.Module:
    """Build a backbone in eval mode.

    With `weights` given, the state dict is loaded from that file after
    verifying `weights_sha256` (when provided). Otherwise the model
    keeps seeded deterministic random initialization.
    """
    backbone_info(name)
    torch.manual_seed(WEIGHT_SEED)
    if name == "inception-pool":
        model = _InceptionPool()
    else:
        model = _VGGConvPool()
    if weights is not None:
        if weights_sha256 is not None:
            _verify_checksum(weights, weights_sha256)
        state = torch.load(weights, map_location="cpu", weights_only=True)
        model.load_state_dict(state)
    model.eval()
    for param in model.parameters():
        param.requires_grad_(False)
    return model
