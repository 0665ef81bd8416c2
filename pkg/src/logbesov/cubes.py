"""Dyadic cubes Q_{l,nu} = 2^{-l}(nu + [0,1)^n) and averaged-power queries.

Cube averages are Riemann means over the grid samples falling inside the
cube.  A summed-area (prefix-sum) table makes every cube mean at a level an
O(1) lookup, so scanning all cubes of one level costs O(#cubes) after an
O(N^dim) table build.  Cubes are genuine dyadic cubes (edge 2^{-l}); their
faces do not align with the sampling lattice, so a cube's sample window is
the set of grid points inside it, guarded to >= 8 samples per axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError
from .grid import INF, GridSpec, SampledFunction, check_exponent, is_inf

PI = math.pi
_EPS = 1e-9


@dataclass(frozen=True)
class DyadicCube:
    """Q_{l,nu} with edge 2^{-l} and lower-left corner 2^{-l} nu."""

    level: int
    index: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.level < 0:
            raise DomainError(f"cube level must be >= 0, got {self.level}")

    @property
    def edge(self) -> float:
        return 2.0 ** (-self.level)

    @property
    def corner(self) -> tuple[float, ...]:
        return tuple(self.edge * nu for nu in self.index)


def max_cube_level(grid: GridSpec) -> int:
    return grid.l_max


def level_index_range(level: int) -> tuple[int, int]:
    """Admissible nu per axis: cube [2^-l nu, 2^-l (nu+1)) inside [-pi, pi)."""
    scale = float(1 << level)
    nu_min = int(math.ceil(-PI * scale - _EPS))
    nu_max = int(math.floor(PI * scale + _EPS)) - 1  # nu + 1 <= pi * 2^l
    return nu_min, nu_max


def _axis_window(grid: GridSpec, corner: float, edge: float) -> tuple[int, int]:
    """Half-open sample-index window [i0, i1) covering [corner, corner+edge)."""
    dx = grid.spacing
    i0 = int(math.ceil((corner + PI) / dx - _EPS))
    i1 = int(math.ceil((corner + edge + PI) / dx - _EPS))
    return i0, i1


def cube_sample_windows(grid: GridSpec, cube: DyadicCube) -> list[tuple[int, int]]:
    """Per-axis index windows of the cube, validating all cube invariants."""
    if len(cube.index) != grid.dim:
        raise DomainError("cube dimension does not match grid")
    nu_min, nu_max = level_index_range(cube.level)
    windows = []
    for nu in cube.index:
        if nu < nu_min or nu > nu_max:
            raise DomainError(f"cube {cube} lies outside [-pi, pi)^{grid.dim}")
    for axis, nu in enumerate(cube.index):
        i0, i1 = _axis_window(grid, cube.edge * nu, cube.edge)
        if i1 - i0 < 8:
            raise ResolutionError(
                f"cube at level {cube.level} spans {i1 - i0} < 8 samples on axis {axis}"
            )
        windows.append((i0, i1))
    return windows


def cube_mean_power(f: SampledFunction, cube: DyadicCube, r: float) -> float:
    """Averaged integral (mean_Q |f|^r)^(1/r); r=INF is the max over the cube."""
    check_exponent(r)
    windows = cube_sample_windows(f.grid, cube)
    block = f.values
    for axis, (i0, i1) in enumerate(windows):
        block = np.take(block, np.arange(i0, i1), axis=axis)
    a = np.abs(block)
    if is_inf(r):
        return float(a.max())
    return float(np.mean(a**r) ** (1.0 / r))


def _check_level(grid: GridSpec, level: int) -> None:
    if level < 0:
        raise DomainError(f"cube level must be >= 0, got {level}")
    if level > grid.l_max:
        raise ResolutionError(
            f"cube level {level} too deep for J={grid.log2_samples} (l_max={grid.l_max})"
        )


def level_boundaries(grid: GridSpec, level: int) -> np.ndarray:
    """Sample-index boundaries b[0] <= ... <= b[M] of the level's cubes (one axis)."""
    nu_min, nu_max = level_index_range(level)
    edge = 2.0**-level
    nus = np.arange(nu_min, nu_max + 2)
    dx = grid.spacing
    return np.ceil((edge * nus + PI) / dx - _EPS).astype(np.int64)


class CubeMeanTable:
    """Prefix-sum table over a nonnegative array for O(1) cube-window sums."""

    def __init__(self, grid: GridSpec, data: np.ndarray):
        self.grid = grid
        c = np.asarray(data, dtype=np.float64)
        for axis in range(grid.dim):
            c = np.cumsum(c, axis=axis)
        pad = [(1, 0)] * grid.dim
        self._table = np.pad(c, pad)

    def window_sums(self, bounds: list[np.ndarray]) -> np.ndarray:
        """Sums over the index boxes spanned by consecutive boundary pairs."""
        t = self._table
        if self.grid.dim == 1:
            b = bounds[0]
            return t[b[1:]] - t[b[:-1]]
        bi, bj = bounds
        sub = t[np.ix_(bi, bj)]
        return sub[1:, 1:] - sub[:-1, 1:] - sub[1:, :-1] + sub[:-1, :-1]


def level_cube_means(
    grid: GridSpec, data: np.ndarray, level: int, table: CubeMeanTable | None = None
) -> np.ndarray:
    """Mean of `data` over every admissible cube at `level` (array over nu-grid)."""
    _check_level(grid, level)
    b = level_boundaries(grid, level)
    counts_1d = np.diff(b)
    if table is None:
        table = CubeMeanTable(grid, data)
    if grid.dim == 1:
        sums = table.window_sums([b])
        return sums / counts_1d
    sums = table.window_sums([b, b])
    counts = counts_1d[:, None] * counts_1d[None, :]
    return sums / counts


def level_cube_maxes(grid: GridSpec, data: np.ndarray, level: int) -> np.ndarray:
    """Max of `data` over every admissible cube at `level`."""
    _check_level(grid, level)
    b = level_boundaries(grid, level)
    a = np.abs(np.asarray(data))
    if grid.dim == 1:
        seg = a[b[0] : b[-1]]
        return np.maximum.reduceat(seg, b[:-1] - b[0])
    seg = a[b[0] : b[-1], b[0] : b[-1]]
    rows = np.maximum.reduceat(seg, b[:-1] - b[0], axis=0)
    return np.maximum.reduceat(rows, b[:-1] - b[0], axis=1)


def sup_over_cubes(
    f: SampledFunction,
    level: int,
    r: float,
    *,
    data: np.ndarray | None = None,
    table: CubeMeanTable | None = None,
) -> float:
    """max over grid-aligned dyadic cubes of `level` of (mean_Q |f|^r)^(1/r).

    `data` may carry a precomputed |f|^r array and `table` its prefix sums,
    so sweeps over many levels share the O(N^dim) build.
    """
    check_exponent(r)
    _check_level(f.grid, level)
    if is_inf(r):
        return float(level_cube_maxes(f.grid, np.abs(f.values), level).max())
    if data is None:
        data = np.abs(f.values) ** r
    means = level_cube_means(f.grid, data, level, table=table)
    return float(means.max() ** (1.0 / r))


def sliding_window_mean_max(f_abs: np.ndarray, grid: GridSpec, halfwidth: float) -> float:
    """sup over all centers x of the mean of f_abs over the cube x + [-h, h]^dim.

    Periodic (torus) windows; used by the ball-average criterion where the
    center is unconstrained.  Windows shrink to a single sample when h is
    below the grid spacing.
    """
    hs = int(math.floor(halfwidth / grid.spacing + _EPS))
    if hs < 1:
        return float(f_abs.max())
    w = 2 * hs + 1
    out = np.asarray(f_abs, dtype=np.float64)
    for axis in range(grid.dim):
        padded = np.concatenate(
            [out.take(np.arange(out.shape[axis] - hs, out.shape[axis]), axis=axis), out,
             out.take(np.arange(hs), axis=axis)],
            axis=axis,
        )
        c = np.cumsum(padded, axis=axis)
        pad = [(0, 0)] * grid.dim
        pad[axis] = (1, 0)
        c = np.pad(c, pad)
        idx_hi = np.arange(w, w + out.shape[axis])
        idx_lo = np.arange(out.shape[axis])
        out = (np.take(c, idx_hi, axis=axis) - np.take(c, idx_lo, axis=axis)) / w
    return float(out.max())
