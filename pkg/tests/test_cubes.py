import math

import numpy as np
import pytest

from logbesov.cubes import (
    DyadicCube,
    cube_mean_power,
    level_cube_means,
    level_index_range,
    sliding_window_mean_max,
    sup_over_cubes,
)
from logbesov.errors import DomainError, ResolutionError
from logbesov.gallery import make_exponential, make_indicator
from logbesov.grid import INF, GridSpec, SampledFunction, lp_norm, make_constant, random_band_limited


def test_cube_geometry():
    q = DyadicCube(2, (1,))
    assert q.edge == 0.25
    assert q.corner == (0.25,)
    lo, hi = level_index_range(0)
    assert lo == -3 and hi == 2  # six unit cubes inside [-pi, pi)


def test_cube_mean_constant(grid10):
    c = make_constant(grid10, 0.7 - 0.2j)
    for r in (1.0, 2.0, INF):
        for cube in (DyadicCube(0, (0,)), DyadicCube(2, (-3,))):
            assert cube_mean_power(c, cube, r) == pytest.approx(abs(0.7 - 0.2j), rel=1e-12)


def test_cube_mean_half_indicator(grid12):
    # indicator of the left half of Q = [0, 1/4): mean 0.5 within a cell
    f = make_indicator(grid12, [(0.0, 0.125)])
    q = DyadicCube(2, (0,))
    got = cube_mean_power(f, q, 1.0)
    assert got == pytest.approx(0.5, abs=2 * grid12.spacing / q.edge)


def test_cube_mean_linear(grid12):
    xs = grid12.axis()
    f = SampledFunction(grid12, xs.astype(complex))
    got = cube_mean_power(f, DyadicCube(2, (0,)), 1.0)
    assert got == pytest.approx(2.0**-3, abs=2e-3)


def test_cube_guards(grid10):
    with pytest.raises(DomainError):
        cube_mean_power(make_constant(grid10), DyadicCube(0, (3,)), 1.0)  # outside
    deep = grid10.l_max + 1
    with pytest.raises(ResolutionError):
        cube_mean_power(make_constant(grid10), DyadicCube(deep, (0,)), 1.0)
    with pytest.raises(ResolutionError):
        sup_over_cubes(make_constant(grid10), deep, 1.0)


def test_sup_over_cubes_constant_and_modulus(grid10):
    one = make_constant(grid10)
    for l in range(grid10.l_max + 1):
        for r in (1.0, 2.0, INF):
            assert sup_over_cubes(one, l, r) == pytest.approx(1.0, rel=1e-12)
    f = make_exponential(grid10, (2**5,))
    for l in (0, 2, grid10.l_max):
        assert sup_over_cubes(f, l, INF) == pytest.approx(1.0, rel=1e-12)


def test_sup_over_cubes_indicator_brute_force(grid12):
    f = make_indicator(grid12, [(0.0, math.pi - 1e-9)])
    level = 2
    got = sup_over_cubes(f, level, 1.0)
    # brute force over all level-2 cubes
    lo, hi = level_index_range(level)
    best = max(
        cube_mean_power(f, DyadicCube(level, (nu,)), 1.0) for nu in range(lo, hi + 1)
    )
    assert got == pytest.approx(best, rel=1e-12)
    assert got == pytest.approx(1.0, rel=1e-12)  # a cube sits fully inside [0, pi)


def test_sup_over_cubes_r_monotone(grid10, rng):
    f = random_band_limited(grid10, 50, rng)
    for l in (0, 2, 4):
        vals = [sup_over_cubes(f, l, r) for r in (1.0, 1.5, 2.0, 4.0, INF)]
        assert all(vals[i] <= vals[i + 1] * (1 + 1e-9) for i in range(len(vals) - 1))
        assert vals[-1] <= lp_norm(f, INF) * (1 + 1e-12)


def test_level_cube_means_match_single_cube(grid10, rng):
    f = random_band_limited(grid10, 30, rng)
    data = np.abs(f.values) ** 2
    level = 3
    means = level_cube_means(grid10, data, level)
    lo, hi = level_index_range(level)
    for i, nu in enumerate(range(lo, hi + 1)):
        direct = cube_mean_power(f, DyadicCube(level, (nu,)), 2.0) ** 2
        assert means[i] == pytest.approx(direct, rel=1e-12)


def test_level_cube_means_2d(grid2d, rng):
    f = random_band_limited(grid2d, 10, rng)
    data = np.abs(f.values)
    means = level_cube_means(grid2d, data, 0)
    lo, hi = level_index_range(0)
    direct = cube_mean_power(f, DyadicCube(0, (lo, hi)), 1.0)
    assert means[0, -1] == pytest.approx(direct, rel=1e-12)


def test_sliding_window_mean(grid10):
    # indicator of a short interval: max sliding mean equals coverage fraction
    f = make_indicator(grid10, [(0.0, 0.5)])
    a = np.abs(f.values)
    got = sliding_window_mean_max(a, grid10, 0.25)
    assert got == pytest.approx(1.0, abs=2.0 / (0.5 / grid10.spacing))
    wide = sliding_window_mean_max(a, grid10, 1.0)
    assert wide < 1.0
    assert sliding_window_mean_max(a, grid10, grid10.spacing / 4) == pytest.approx(1.0)


def test_sliding_window_mean_2d():
    g = GridSpec(2, 7)
    f = make_indicator(g, [(-0.5, 0.5), (-0.5, 0.5)])
    a = np.abs(f.values)
    assert sliding_window_mean_max(a, g, 0.25) == pytest.approx(1.0, abs=0.1)
    assert sliding_window_mean_max(a, g, 2.0) < 0.5
