import numpy as np
import pytest

from logbesov.errors import InvalidInputError
from logbesov.experiments import (
    ExperimentConfig,
    fit_slope,
    growth_law,
    mollify,
    run_charfun,
    run_exp_growth,
    run_partition_check,
    run_sandwich,
)
from logbesov.gallery import make_indicator
from logbesov.grid import INF


def test_fit_slope_basic():
    xs = np.arange(1.0, 9.0)
    slope, r2 = fit_slope(xs, xs)
    assert slope == pytest.approx(1.0, abs=1e-12)
    assert r2 == pytest.approx(1.0)
    rng = np.random.default_rng(0)
    ys = xs**2 * (1 + 0.01 * rng.standard_normal(xs.size))
    slope, _ = fit_slope(xs, ys)
    assert slope == pytest.approx(2.0, abs=0.05)
    slope, _ = fit_slope(xs, np.full_like(xs, 3.0))
    assert slope == pytest.approx(0.0, abs=1e-12)


def test_fit_slope_guards():
    with pytest.raises(InvalidInputError):
        fit_slope([1, 2, 3], [1, 2, 3])
    with pytest.raises(InvalidInputError):
        fit_slope([1, 2, 3, 4], [1, -2, 3, 4])


def test_growth_law_table():
    assert growth_law(1.0, 2.0)[0] == 2.0
    assert growth_law(1.0, 1.0)[:2] == (1.0, 1.0)
    assert growth_law(1.0, 0.0)[:2] == (1.0, 0.0)
    assert growth_law(1.0, -1.0)[:2] == (1.0, 0.0)
    assert growth_law(1.0, -2.0)[0] == 2.0
    assert growth_law(INF, 0.5)[:2] == (1.0, 0.0)
    assert growth_law(4.0, 0.0)[0] == 0.5
    assert growth_law(4.0, 0.5)[:2] == (0.5, 0.5)
    assert growth_law(4.0, -2.0)[0] == 2.0
    assert growth_law(1.5, 0.0)[0] == pytest.approx(2.0 / 3.0)


def test_partition_check_runner():
    table = run_partition_check(ExperimentConfig(log2_samples=10))
    assert table.ok
    table2 = run_partition_check(ExperimentConfig(log2_samples=8, dim=2, kind="tensor"))
    assert table2.ok


def test_exp_growth_small():
    config = ExperimentConfig(log2_samples=11, b_list=(0.0, -2.0), p_list=(1.0,), m_range=(3, 7))
    table = run_exp_growth(config)
    assert table.ok
    assert all(row["asymptote"] for row in table.rows)


def test_exp_growth_m_range_guard():
    config = ExperimentConfig(log2_samples=10, m_range=(3, 10))
    with pytest.raises(InvalidInputError):
        run_exp_growth(config)


def test_charfun_small():
    table = run_charfun(ExperimentConfig(log2_samples=12))
    assert table.ok
    ks = [row["k"] for row in table.rows]
    assert ks == sorted(ks)


def test_mollify_decays(grid10):
    f = make_indicator(grid10, "cube")
    smooth = mollify(f, 2.0**-4)
    from logbesov.partition import build_partition, decompose

    part = build_partition(grid10)
    sups = decompose(smooth, part).sup_norms()
    assert sups[7] < 0.01 * sups[4]


def test_sandwich_small():
    table = run_sandwich(ExperimentConfig(log2_samples=12, m_range=(4, 9)))
    assert table.ok


def test_tables_deterministic():
    config = ExperimentConfig(log2_samples=10, b_list=(0.0,), p_list=(1.0,), m_range=(3, 6))
    a = run_exp_growth(config).to_json()
    b = run_exp_growth(config).to_json()
    assert a == b
    ca = run_exp_growth(config).to_csv()
    cb = run_exp_growth(config).to_csv()
    assert ca.encode() == cb.encode()
