"""Smooth dyadic partition of unity and Littlewood-Paley projections.

The generator phi_0 is 1 on {|xi| <= 1}, 0 on {|xi| >= 3/2}, with the C^inf
transition g(3-2r)/[g(3-2r)+g(2r-2)], g(t) = exp(-1/t) for t > 0.  Level
symbols are built as differences of rescaled generators,

    phi_k = phi_0(2^-k .) - phi_0(2^-k+1 .)   (k >= 1),

which makes the telescoping identity sum_{k<=K} phi_k = phi_0(2^-K .) exact
in floating point.  The TENSOR kind replaces |xi| by per-axis profiles
(product generator); it is what the product-indicator factorization uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidInputError, LevelOverflowError
from .grid import GridSpec, SampledFunction, apply_symbol


class PartitionKind(Enum):
    RADIAL = "radial"
    TENSOR = "tensor"


def _g(t: np.ndarray | float) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    pos = t > 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(-1.0 / t[pos])
    return out


def smoothstep(t: np.ndarray | float) -> np.ndarray:
    """C^inf step: 0 for t <= 0, 1 for t >= 1, monotone in between."""
    a = _g(t)
    b = _g(1.0 - np.asarray(t, dtype=np.float64))
    with np.errstate(invalid="ignore"):
        out = np.where(a + b > 0, a / np.where(a + b > 0, a + b, 1.0), 0.0)
    return out


def generator_profile(r: np.ndarray | float) -> np.ndarray:
    """phi_0 as a function of r = |xi|: exactly 1 on r<=1, 0 on r>=3/2."""
    r = np.asarray(r, dtype=np.float64)
    num = _g(3.0 - 2.0 * r)
    den = num + _g(2.0 * r - 2.0)
    with np.errstate(invalid="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)


@dataclass
class DyadicPartition:
    """Symbols phi_0..phi_K_max on the frequency lattice of `grid`."""

    grid: GridSpec
    kind: PartitionKind = PartitionKind.RADIAL
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def k_max(self) -> int:
        return self.grid.k_max

    def _cumulative(self, k: int) -> np.ndarray:
        """phi_0(2^-k xi) on the lattice (= sum of symbols 0..k, exactly)."""
        key = ("cum", k)
        if key not in self._cache:
            scale = float(1 << k)
            if self.kind is PartitionKind.RADIAL:
                rho = self.grid.freq_radius()
                self._cache[key] = generator_profile(rho / scale)
            else:
                m = self.grid.freq_axis().astype(np.float64)
                prof = generator_profile(np.abs(m) / scale)
                if self.grid.dim == 1:
                    self._cache[key] = prof
                else:
                    self._cache[key] = prof[:, None] * prof[None, :]
        return self._cache[key]

    def _check_level(self, k: int) -> None:
        if k < 0 or k > self.k_max:
            raise LevelOverflowError(f"level {k} outside [0, {self.k_max}]")

    def symbol(self, k: int) -> np.ndarray:
        """phi_k on the frequency lattice (FFT layout)."""
        self._check_level(k)
        key = ("sym", k)
        if key not in self._cache:
            if k == 0:
                self._cache[key] = self._cumulative(0)
            else:
                self._cache[key] = self._cumulative(k) - self._cumulative(k - 1)
        return self._cache[key]

    def cumulative_symbol(self, k: int) -> np.ndarray:
        self._check_level(k)
        return self._cumulative(k)


def build_partition(grid: GridSpec, kind: PartitionKind | str = PartitionKind.RADIAL) -> DyadicPartition:
    if isinstance(kind, str):
        kind = PartitionKind(kind.lower())
    return DyadicPartition(grid, kind)


def project(f: SampledFunction, partition: DyadicPartition, k: int) -> SampledFunction:
    """Frequency piece S_k f = F^{-1}(phi_k F f); S_j f := 0 for j < 0."""
    if k < 0:
        return SampledFunction(f.grid, np.zeros(f.grid.shape, dtype=np.complex128))
    partition._check_level(k)
    if f.grid != partition.grid:
        raise InvalidInputError("function and partition live on different grids")
    return apply_symbol(f, partition.symbol(k))


def partial_sum(f: SampledFunction, partition: DyadicPartition, k: int) -> SampledFunction:
    """S^k f = sum_{j<=k} S_j f, applied as one multiplier (exact telescoping)."""
    if k < 0:
        return SampledFunction(f.grid, np.zeros(f.grid.shape, dtype=np.complex128))
    partition._check_level(k)
    if f.grid != partition.grid:
        raise InvalidInputError("function and partition live on different grids")
    return apply_symbol(f, partition.cumulative_symbol(k))


@dataclass
class SpectralDecomposition:
    """The list (S_0 f, ..., S_K_max f) of frequency pieces of one function."""

    partition: DyadicPartition
    pieces: list[SampledFunction]

    @property
    def grid(self) -> GridSpec:
        return self.partition.grid

    @property
    def k_max(self) -> int:
        return self.partition.k_max

    def piece(self, k: int) -> SampledFunction:
        if k < 0 or k > self.k_max:
            return SampledFunction(self.grid, np.zeros(self.grid.shape, dtype=np.complex128))
        return self.pieces[k]

    def sup_norms(self) -> np.ndarray:
        return np.array([np.abs(p.values).max() for p in self.pieces])


def decompose(f: SampledFunction, partition: DyadicPartition) -> SpectralDecomposition:
    if f.grid != partition.grid:
        raise InvalidInputError("function and partition live on different grids")
    coeffs = np.fft.fftn(f.values)
    pieces = [
        SampledFunction(f.grid, np.fft.ifftn(partition.symbol(k) * coeffs))
        for k in range(partition.k_max + 1)
    ]
    return SpectralDecomposition(partition, pieces)


def _torus_distance_sq(grid: GridSpec, shifts: np.ndarray) -> np.ndarray:
    d = grid.spacing * shifts.astype(np.float64)
    d = (d + math.pi) % (2.0 * math.pi) - math.pi
    if d.ndim == 1:
        return d * d
    return np.sum(d * d, axis=-1)


def peetre_maximal(
    f: SampledFunction,
    partition: DyadicPartition,
    j: int,
    a: float,
    *,
    window_cells: int | None = 64,
) -> SampledFunction:
    """Peetre-Fefferman-Stein maximal function of the j-th piece.

    S*_j f(x) = max over grid offsets y of |S_j f(x - y)| / (1 + 2^j |y|)^a
    with |y| the torus distance.  `window_cells` = W restricts offsets to
    |y| <= W 2^{-j} (the kernel is below (1+W)^{-a} outside); None scans the
    full grid, which is O(N^2) per level in 1D.
    """
    if a <= 0:
        raise InvalidInputError("Peetre exponent a must be positive")
    s = np.abs(project(f, partition, j).values)
    n = f.grid.n_samples
    if window_cells is None:
        radius = math.pi * math.sqrt(f.grid.dim)
    else:
        radius = window_cells * 2.0**-j
    max_off = min(n // 2, int(math.ceil(radius / f.grid.spacing)))
    offsets = np.arange(-max_off, max_off + 1)
    out = np.zeros_like(s)
    scale = float(1 << j)
    if f.grid.dim == 1:
        for o in offsets:
            d = math.sqrt(_torus_distance_sq(f.grid, np.array([o]))[0])
            if d > radius and o != 0:
                continue
            w = (1.0 + scale * d) ** (-a)
            np.maximum(out, w * np.roll(s, o), out=out)
    else:
        for o1 in offsets:
            d1 = _torus_distance_sq(f.grid, np.array([o1]))[0]
            rolled1 = np.roll(s, o1, axis=0)
            for o2 in offsets:
                d2 = _torus_distance_sq(f.grid, np.array([o2]))[0]
                d = math.sqrt(d1 + d2)
                if d > radius and (o1, o2) != (0, 0):
                    continue
                w = (1.0 + scale * d) ** (-a)
                np.maximum(out, w * np.roll(rolled1, o2, axis=1), out=out)
    return SampledFunction(f.grid, out)
