"""File formats: feature matrices (CSV / binary), histograms, score
lists, and curve outputs (JSON / CSV).

Binary feature layout: magic ``PRDF``, version u32=1, n u32, d u32,
n*d little-endian float32 row-major, one flag byte (1 = labels follow),
then optionally n little-endian int32 labels.

All numeric text output renders floats with 17 significant digits via
the C locale conventions, and files are written atomically
(temp file + rename) so identical runs produce byte-identical outputs.
"""

from __future__ import annotations

import json
import math
import os
import struct
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .data import SampleSet
from .errors import FileFormatError, InputError
from .measures import DiscreteDistribution, PRCurve

MAGIC = b"PRDF"
VERSION = 1


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _atomic_write(path: str, payload: bytes):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".prd-tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# feature files


def _load_features_csv(path: str) -> SampleSet:
    rows = []
    labels = []
    has_label_col = False
    with open(path, "r", newline="") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise FileFormatError(f"{path}: empty feature file")
    first = lines[0].split(",")
    start = 0
    header = None
    try:
        [float(tok) for tok in first]
    except ValueError:
        header = [tok.strip().lower() for tok in first]
        has_label_col = bool(header) and header[0] == "label"
        start = 1
    width = None
    for ridx, line in enumerate(lines[start:]):
        toks = line.split(",")
        if width is None:
            width = len(toks)
        elif len(toks) != width:
            raise FileFormatError(
                f"{path}: ragged row {ridx}: expected {width} columns, "
                f"got {len(toks)}")
        if has_label_col:
            try:
                labels.append(int(toks[0]))
            except ValueError:
                raise FileFormatError(
                    f"{path}: row {ridx} column 0: bad label {toks[0]!r}")
            toks = toks[1:]
        vals = []
        for cidx, tok in enumerate(toks):
            try:
                v = float(tok)
            except ValueError:
                raise FileFormatError(
                    f"{path}: row {ridx} column {cidx}: not a number: {tok!r}")
            if not math.isfinite(v):
                raise FileFormatError(
                    f"{path}: row {ridx} column {cidx}: non-finite value {tok!r}")
            vals.append(v)
        rows.append(vals)
    if not rows:
        raise FileFormatError(f"{path}: no data rows")
    feats = np.asarray(rows, dtype=np.float64)
    return SampleSet(feats, labels=np.asarray(labels) if has_label_col else None)


def _load_features_binary(path: str) -> SampleSet:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != MAGIC:
        raise FileFormatError(f"{path}: bad magic {blob[:4]!r}")
    if len(blob) < 16:
        raise FileFormatError(f"{path}: truncated header")
    version, n, d = struct.unpack_from("<III", blob, 4)
    if version != VERSION:
        raise FileFormatError(f"{path}: unsupported version {version}")
    off = 16
    need = n * d * 4
    if len(blob) < off + need + 1:
        raise FileFormatError(f"{path}: truncated payload")
    feats = np.frombuffer(blob, dtype="<f4", count=n * d, offset=off)
    feats = feats.reshape(n, d).astype(np.float64)
    off += need
    flag = blob[off]
    off += 1
    labels = None
    if flag == 1:
        if len(blob) < off + 4 * n:
            raise FileFormatError(f"{path}: truncated label block")
        labels = np.frombuffer(blob, dtype="<i4", count=n, offset=off).astype(np.int64)
    elif flag != 0:
        raise FileFormatError(f"{path}: bad label flag byte {flag}")
    if not np.all(np.isfinite(feats)):
        bad = np.argwhere(~np.isfinite(feats))[0]
        raise FileFormatError(
            f"{path}: non-finite value at row {bad[0]} column {bad[1]}")
    return SampleSet(feats, labels=labels)


def load_features(path: str) -> SampleSet:
    """Load a feature file, sniffing binary vs CSV by the magic bytes."""
    try:
        with open(path, "rb") as fh:
            head = fh.read(4)
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    if head == MAGIC:
        return _load_features_binary(path)
    return _load_features_csv(path)


def save_features(samples: SampleSet, path: str, fmt: str = "binary"):
    """Write a SampleSet in either format (CSV loses float32 rounding
    only if values need more than 17 digits, i.e. never)."""
    if fmt == "binary":
        parts = [MAGIC, struct.pack("<III", VERSION, samples.n, samples.d)]
        parts.append(np.ascontiguousarray(
            samples.features, dtype="<f4").tobytes())
        if samples.labels is not None:
            parts.append(b"\x01")
            parts.append(np.ascontiguousarray(
                samples.labels, dtype="<i4").tobytes())
        else:
            parts.append(b"\x00")
        _atomic_write(path, b"".join(parts))
    elif fmt == "csv":
        lines = []
        cols = [f"f{j}" for j in range(samples.d)]
        if samples.labels is not None:
            cols = ["label"] + cols
        lines.append(",".join(cols))
        for i in range(samples.n):
            row = [_fmt(v) for v in samples.features[i]]
            if samples.labels is not None:
                row = [str(int(samples.labels[i]))] + row
            lines.append(",".join(row))
        _atomic_write(path, ("\n".join(lines) + "\n").encode())
    else:
        raise InputError(f"unknown feature format {fmt!r}")


# ---------------------------------------------------------------------------
# histograms and scores


def load_histogram(path: str) -> DiscreteDistribution:
    """One weight per CSV line (optional single-column header)."""
    with open(path, "r", newline="") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise FileFormatError(f"{path}: empty histogram file")
    start = 0
    try:
        float(lines[0].split(",")[0])
    except ValueError:
        start = 1
    weights = []
    for ridx, line in enumerate(lines[start:]):
        tok = line.split(",")[0]
        try:
            weights.append(float(tok))
        except ValueError:
            raise FileFormatError(f"{path}: row {ridx}: not a number: {tok!r}")
    try:
        return DiscreteDistribution(np.asarray(weights))
    except InputError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def load_scores(path: str):
    """CSV with columns score,origin (optional header)."""
    with open(path, "r", newline="") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise FileFormatError(f"{path}: empty score file")
    start = 0
    try:
        float(lines[0].split(",")[0])
    except ValueError:
        start = 1
    scores, origins = [], []
    for ridx, line in enumerate(lines[start:]):
        toks = line.split(",")
        if len(toks) != 2:
            raise FileFormatError(
                f"{path}: row {ridx}: expected 2 columns, got {len(toks)}")
        try:
            scores.append(float(toks[0]))
            origins.append(int(toks[1]))
        except ValueError:
            raise FileFormatError(f"{path}: row {ridx}: bad entry {line!r}")
    return np.asarray(scores), np.asarray(origins)


def save_scores(scores: np.ndarray, origins: np.ndarray, path: str):
    lines = ["score,origin"]
    for s, u in zip(scores, origins):
        lines.append(f"{_fmt(float(s))},{int(u)}")
    _atomic_write(path, ("\n".join(lines) + "\n").encode())


# ---------------------------------------------------------------------------
# curve outputs


@dataclass(frozen=True)
class CurveOutput:
    curve: PRCurve
    metadata: dict = field(default_factory=dict)


def curve_json(output: CurveOutput) -> str:
    c = output.curve
    lam = ",".join(_fmt(v) for v in c.lam)
    alpha = ",".join(_fmt(v) for v in c.alpha)
    beta = ",".join(_fmt(v) for v in c.beta)
    meta = json.dumps(output.metadata, sort_keys=True)
    return (f'{{"lambda":[{lam}],"alpha":[{alpha}],'
            f'"beta":[{beta}],"meta":{meta}}}')


def curve_csv(output: CurveOutput) -> str:
    lines = ["lambda,alpha,beta"]
    c = output.curve
    for l, a, b in zip(c.lam, c.alpha, c.beta):
        lines.append(f"{_fmt(l)},{_fmt(a)},{_fmt(b)}")
    return "\n".join(lines) + "\n"


def save_curve(output: CurveOutput, path: str, fmt: str = "json"):
    if fmt == "json":
        _atomic_write(path, curve_json(output).encode())
    elif fmt == "csv":
        _atomic_write(path, curve_csv(output).encode())
    else:
        raise InputError(f"unknown curve format {fmt!r}")


def load_curve_json(path: str) -> CurveOutput:
    with open(path) as fh:
        obj = json.load(fh)  # accepts the Infinity literal
    curve = PRCurve(np.asarray(obj["lambda"]), np.asarray(obj["alpha"]),
                    np.asarray(obj["beta"]))
    return CurveOutput(curve, obj.get("meta", {}))


def save_pairs(pairs, path: str, header: str, fmt: str = "json"):
    """Emit (x, y) frontier lists (ROC or MCR) mirroring the curve formats."""
    xname, yname = header.split(",")
    if fmt == "json":
        xs = ",".join(_fmt(float(x)) for x, _ in pairs)
        ys = ",".join(_fmt(float(y)) for _, y in pairs)
        payload = f'{{"{xname}":[{xs}],"{yname}":[{ys}]}}'
        _atomic_write(path, payload.encode())
    elif fmt == "csv":
        lines = [header]
        for x, y in pairs:
            lines.append(f"{_fmt(float(x))},{_fmt(float(y))}")
        _atomic_write(path, ("\n".join(lines) + "\n").encode())
    else:
        raise InputError(f"unknown format {fmt!r}")
