from __future__ import annotations

import csv
import io
import struct
from pathlib import Path

import numpy as np

from .contracts import MlpParams

CHECKPOINT_MAGIC = b"PINNCKPT"
CHECKPOINT_VERSION = 1
_U32 = struct.Struct("<I")
_F64 = np.dtype("<f8")


class CheckpointFormatError(ValueError):
    code = "PINN_CHECKPOINT_INVALID"


def serialize_checkpoint(params: MlpParams) -> bytes:
    """
    Layout (little-endian, see docs/architecture/05_ARTIFACT_FORMATS.md):
    magic, uint32 version, uint32 L, L x uint32 layer sizes, then per layer the
    row-major float64 weight matrix followed by the float64 bias vector.
    """

    sizes = params.layer_sizes
    parts = [CHECKPOINT_MAGIC, _U32.pack(CHECKPOINT_VERSION), _U32.pack(len(sizes))]
    parts.extend(_U32.pack(s) for s in sizes)
    for w, b in params.layers:
        parts.append(np.ascontiguousarray(w, dtype=_F64).tobytes(order="C"))
        parts.append(np.ascontiguousarray(b, dtype=_F64).tobytes(order="C"))
    return b"".join(parts)


def parse_checkpoint(data: bytes) -> MlpParams:
    view = memoryview(data)
    offset = len(CHECKPOINT_MAGIC)
    if bytes(view[:offset]) != CHECKPOINT_MAGIC:
        raise CheckpointFormatError("bad checkpoint magic")

    def u32() -> int:
        nonlocal offset
        if offset + _U32.size > len(view):
            raise CheckpointFormatError("truncated checkpoint header")
        (v,) = _U32.unpack_from(view, offset)
        offset += _U32.size
        return int(v)

    version = u32()
    if version != CHECKPOINT_VERSION:
        raise CheckpointFormatError(f"unsupported checkpoint version {version}")
    sizes = [u32() for _ in range(u32())]
    if len(sizes) < 2:
        raise CheckpointFormatError("checkpoint needs at least two layer sizes")

    def f64(count: int) -> np.ndarray:
        nonlocal offset
        end = offset + count * _F64.itemsize
        if end > len(view):
            raise CheckpointFormatError("truncated checkpoint payload")
        out = np.frombuffer(view[offset:end], dtype=_F64).astype(np.float64)
        offset = end
        return out

    arrays: list[np.ndarray] = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        arrays.append(f64(fan_in * fan_out).reshape(fan_in, fan_out))
        arrays.append(f64(fan_out))
    if offset != len(view):
        raise CheckpointFormatError(f"{len(view) - offset} trailing bytes after checkpoint payload")
    try:
        return MlpParams.from_arrays(arrays)
    except ValueError as e:
        raise CheckpointFormatError(str(e)) from None


def write_checkpoint(*, params: MlpParams, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_bytes(serialize_checkpoint(params))


def read_checkpoint(path: Path) -> MlpParams:
    return parse_checkpoint(path.read_bytes())


def serialize_loss_history_csv(history: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("iteration", "loss"))
    for i, v in enumerate(history):
        w.writerow((i, f"{float(v):.17g}"))
    return buf.getvalue()


def write_loss_history_csv(*, history: np.ndarray, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(serialize_loss_history_csv(history), encoding="utf-8")
