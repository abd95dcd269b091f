"""Median ensemble of linear sigmoid classifiers trained with Adam.

Each member is an independently trained logistic regression: binary
cross-entropy on sigmoid(w.x + b), Adam (0.9 / 0.999 / 1e-8), learning
rate decaying linearly to zero across epochs, L2 weight decay coupled
into the gradient (weights only, not the bias). Weights start at zero,
so the only randomness is the seeded per-epoch batch shuffle; identical
data and seed reproduce members bitwise. The ensemble prediction is the
median of the members' sigmoid outputs.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .accel import train_member
from .errors import InputError
from .parallel import thread_cap

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class TrainingConfig:
    member_count: int = 10
    epochs: int = 50
    initial_learning_rate: float = 1e-3
    weight_decay: float = 0.1
    batch_size: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.member_count < 1:
            raise InputError("member_count must be >= 1")
        if self.epochs < 1:
            raise InputError("epochs must be >= 1")
        if not self.initial_learning_rate > 0:
            raise InputError("initial_learning_rate must be > 0")
        if self.weight_decay < 0:
            raise InputError("weight_decay must be >= 0")
        if self.batch_size < 1:
            raise InputError("batch_size must be >= 1")

    def to_dict(self) -> dict:
        return {
            "member_count": self.member_count,
            "epochs": self.epochs,
            "initial_learning_rate": self.initial_learning_rate,
            "weight_decay": self.weight_decay,
            "batch_size": self.batch_size,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainingConfig":
        return cls(**d)


@dataclass(frozen=True)
class LabeledTrainSet:
    """Feature matrix with 0/1 origin targets (1 = drawn from P)."""

    features: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        X = np.ascontiguousarray(self.features, dtype=np.float64)
        y = np.asarray(self.targets)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise InputError("features must be an n x d matrix with n,d >= 1")
        if y.shape != (X.shape[0],):
            raise InputError("targets length must match feature rows")
        if not np.all(np.isfinite(X)):
            raise InputError("features must be finite")
        if not np.all((y == 0) | (y == 1)):
            raise InputError("targets must be 0/1 bits")
        y = np.ascontiguousarray(y, dtype=np.float64)
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "targets", y)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class EnsembleModel:
    """Trained members as (weight vector, bias) pairs."""

    members: tuple
    config: TrainingConfig

    def __post_init__(self):
        if len(self.members) < 1:
            raise InputError("an ensemble needs at least one member")
        frozen = []
        d = None
        for w, b in self.members:
            w = np.asarray(w, dtype=np.float64)
            if d is None:
                d = w.size
            if w.ndim != 1 or w.size != d:
                raise InputError("member weight vectors must share one dimension")
            if not (np.all(np.isfinite(w)) and np.isfinite(b)):
                raise InputError("member parameters must be finite")
            w.setflags(write=False)
            frozen.append((w, float(b)))
        object.__setattr__(self, "members", tuple(frozen))

    @property
    def d(self) -> int:
        return self.members[0][0].size

    def to_json(self) -> str:
        obj = {
            "members": [{"w": list(w), "b": b} for w, b in self.members],
            "config": self.config.to_dict(),
        }
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "EnsembleModel":
        obj = json.loads(text)
        members = tuple((np.asarray(m["w"], dtype=np.float64), float(m["b"]))
                        for m in obj["members"])
        return cls(members, TrainingConfig.from_dict(obj["config"]))


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def member_seed_sequence(seed: int, member: int) -> np.random.SeedSequence:
    """Deterministic per-member seeding derived from (seed, member)."""
    return np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, member])


def loss_and_gradient(w, b, x, y, weight_decay=0.0):
    """Per-sample BCE loss with coupled L2, and its analytic gradient.

    Exposed for the finite-difference gradient check; the training loop
    uses the same algebra inside the compiled kernel.
    """
    z = float(np.dot(w, x) + b)
    s = float(_sigmoid(np.asarray([z]))[0])
    eps = 1e-300
    loss = -(y * np.log(s + eps) + (1 - y) * np.log(1 - s + eps))
    loss += 0.5 * weight_decay * float(np.dot(w, w))
    gw = (s - y) * x + weight_decay * w
    gb = s - y
    return float(loss), gw, float(gb)


def _train_one(X, y, config: TrainingConfig, member: int):
    n = X.shape[0]
    rng = np.random.default_rng(member_seed_sequence(config.seed, member))
    order = np.empty((config.epochs, n), dtype=np.int64)
    for e in range(config.epochs):
        order[e] = rng.permutation(n)
    w, b = train_member(X, y, order, config.initial_learning_rate,
                        config.weight_decay, config.batch_size,
                        ADAM_BETA1, ADAM_BETA2, ADAM_EPS)
    return w, b


def train(data: LabeledTrainSet, config: TrainingConfig) -> EnsembleModel:
    """Train the full ensemble; members may run concurrently."""
    pos = int(np.sum(data.targets))
    if pos == 0 or pos == data.n:
        raise InputError("training data must contain both classes")
    workers = min(thread_cap(), config.member_count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_train_one, data.features, data.targets,
                                   config, j)
                       for j in range(config.member_count)]
            members = tuple(f.result() for f in futures)
    else:
        members = tuple(_train_one(data.features, data.targets, config, j)
                        for j in range(config.member_count))
    return EnsembleModel(members, config)


def predict(model: EnsembleModel, features: np.ndarray) -> np.ndarray:
    """Median of member sigmoid scores, one value in [0,1] per row."""
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.d:
        raise InputError(
            f"features must be n x {model.d}, got shape {X.shape}"
        )
    scores = np.empty((len(model.members), X.shape[0]))
    for j, (w, b) in enumerate(model.members):
        scores[j] = _sigmoid(X @ w + b)
    return np.median(scores, axis=0)
