"""File formats: `.sfn` sampled functions and `.dpu` partition exports.

Both are a single UTF-8 JSON header line (newline-terminated) followed by a
raw little-endian float64 payload.  `.sfn` interleaves (re, im) pairs of the
row-major samples; `.dpu` concatenates the per-level symbol arrays (FFT
frequency layout, row-major), k = 0..K_max.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidInputError
from .grid import GridSpec, SampledFunction
from .partition import DyadicPartition, PartitionKind, build_partition


def save_sfn(path, f: SampledFunction) -> None:
    header = {"format": "sfn", "dim": f.grid.dim, "J": f.grid.log2_samples}
    flat = f.values.reshape(-1)
    payload = np.empty(2 * flat.size, dtype="<f8")
    payload[0::2] = flat.real
    payload[1::2] = flat.imag
    with open(path, "wb") as fh:
        fh.write((json.dumps(header) + "\n").encode("utf-8"))
        fh.write(payload.tobytes())


def load_sfn(path) -> SampledFunction:
    raw = Path(path).read_bytes()
    nl = raw.index(b"\n")
    header = json.loads(raw[:nl].decode("utf-8"))
    if header.get("format") != "sfn":
        raise InvalidInputError(f"{path}: not an .sfn file")
    grid = GridSpec(int(header["dim"]), int(header["J"]))
    payload = np.frombuffer(raw[nl + 1 :], dtype="<f8")
    expected = 2 * grid.n_samples**grid.dim
    if payload.size != expected:
        raise InvalidInputError(f"{path}: payload has {payload.size} f64, expected {expected}")
    values = payload[0::2] + 1j * payload[1::2]
    return SampledFunction(grid, values)


def save_dpu(path, partition: DyadicPartition) -> None:
    grid = partition.grid
    header = {
        "format": "dpu",
        "kind": partition.kind.value,
        "J": grid.log2_samples,
        "dim": grid.dim,
        "K_max": partition.k_max,
    }
    with open(path, "wb") as fh:
        fh.write((json.dumps(header) + "\n").encode("utf-8"))
        for k in range(partition.k_max + 1):
            fh.write(partition.symbol(k).astype("<f8").reshape(-1).tobytes())


def load_dpu(path) -> tuple[DyadicPartition, list[np.ndarray]]:
    """Load a partition export; returns the rebuilt partition and the stored
    symbol arrays (so round-trip checks can compare them)."""
    raw = Path(path).read_bytes()
    nl = raw.index(b"\n")
    header = json.loads(raw[:nl].decode("utf-8"))
    if header.get("format") != "dpu":
        raise InvalidInputError(f"{path}: not a .dpu file")
    grid = GridSpec(int(header.get("dim", 1)), int(header["J"]))
    partition = build_partition(grid, PartitionKind(header["kind"]))
    n = grid.n_samples**grid.dim
    payload = np.frombuffer(raw[nl + 1 :], dtype="<f8")
    k_max = int(header["K_max"])
    if payload.size != (k_max + 1) * n:
        raise InvalidInputError(f"{path}: truncated symbol payload")
    symbols = [
        payload[k * n : (k + 1) * n].reshape(grid.shape) for k in range(k_max + 1)
    ]
    return partition, symbols
