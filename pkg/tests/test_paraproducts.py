import numpy as np
import pytest

from logbesov.errors import DegenerateInputError, InvalidInputError
from logbesov.gallery import expo7_family, make_exponential, make_indicator
from logbesov.grid import INF, SampledFunction, lp_norm, make_constant, random_band_limited
from logbesov.norms import BesovParams, besov_norm
from logbesov.paraproducts import (
    multiplier_lower_bound,
    paraproduct,
    pi2_summand,
    product_report,
    summand_band_energy,
    truncated_product,
)
from logbesov.partition import decompose


def band_limited(grid, band, rng):
    return random_band_limited(grid, band, rng)


def test_decomposition_completeness(part10):
    """Pi1 + Pi2 + Pi3 reconstructs the grid product for band-limited pairs."""
    g = part10.grid
    band = 2.0 ** (part10.k_max - 3)
    for trial in range(5):
        local = np.random.default_rng(trial)
        f = band_limited(g, band, local)
        h = band_limited(g, band, local)
        rep = product_report(f, h, part10)
        assert rep.residual < 1e-8


def test_constant_factor(part10, rng):
    g = part10.grid
    h = band_limited(g, 2.0 ** (part10.k_max - 3), rng)
    one = make_constant(g)
    rep = product_report(one, h, part10)
    assert lp_norm(rep.pi3, INF) < 1e-12  # S_k 1 = 0 for k >= 1
    total = rep.pi1 + rep.pi2
    assert np.abs(total.values - h.values).max() / np.abs(h.values).max() < 1e-10


def test_separated_exponentials_pure_pi3(part12):
    g = part12.grid
    m, j = 8, 4
    f = make_exponential(g, (1 << m,))
    h = make_exponential(g, (1 << j,))
    p1 = paraproduct(f, h, part12, 1)
    p2 = paraproduct(f, h, part12, 2)
    p3 = paraproduct(f, h, part12, 3)
    fg = f * h
    assert lp_norm(p1, INF) < 1e-10
    assert lp_norm(p2, INF) < 1e-10
    assert np.abs(p3.values - fg.values).max() < 1e-10


def test_exponentials_same_level_pure_pi2(part12):
    g = part12.grid
    f = make_exponential(g, (1 << 6,))
    h = make_exponential(g, (-(1 << 6),))
    p2 = paraproduct(f, h, part12, 2)
    assert np.abs(p2.values - 1.0).max() < 1e-10


def test_pi2_summand_envelope(part10, rng):
    """The k-th comparable-frequency summand lives in |xi| <= 5 2^k."""
    g = part10.grid
    band = 2.0 ** (part10.k_max - 3)
    f = band_limited(g, band, rng)
    h = band_limited(g, band, rng)
    dec_f = decompose(f, part10)
    dec_g = decompose(h, part10)
    for k in range(part10.k_max + 1):
        s = pi2_summand(f, h, part10, k, dec_f=dec_f, dec_g=dec_g)
        if lp_norm(s, 2.0) == 0.0:
            continue
        assert summand_band_energy(s, 0.0, 5.0 * 2.0**k) < 1e-10


def test_pi1_product_support(part10, rng):
    """(S^{k-2} f)(S_k g) lives in the annulus [2^{k-3}, 2^{k+1}]."""
    g = part10.grid
    band = 2.0 ** (part10.k_max - 3)
    f = band_limited(g, band, rng)
    h = band_limited(g, band, rng)
    dec_f = decompose(f, part10)
    dec_g = decompose(h, part10)
    from logbesov.partition import partial_sum

    for k in range(2, part10.k_max + 1):
        s = partial_sum(f, part10, k - 2) * dec_g.pieces[k]
        if lp_norm(s, 2.0) == 0.0:
            continue
        assert summand_band_energy(s, 2.0 ** (k - 3), 2.0 ** (k + 1)) < 1e-10


def test_pi1_besov_bound(part10):
    """||Pi1(f,g)||_B <= C ||f||_inf ||g||_B with stable measured constant."""
    g = part10.grid
    band = 2.0 ** (part10.k_max - 3)
    params = BesovParams(0.0, 0.5, 2.0, INF)
    ratios = []
    for trial in range(8):
        local = np.random.default_rng(300 + trial)
        f = band_limited(g, band, local)
        h = band_limited(g, band, local)
        val = besov_norm(paraproduct(f, h, part10, 1), part10, params).value
        ratios.append(val / (lp_norm(f, INF) * besov_norm(h, part10, params).value))
    assert max(ratios) < 3.0
    assert max(ratios) / min(ratios) < 5.0


def test_truncated_product(part12, rng):
    g = part12.grid
    band = 16.0
    f = band_limited(g, band, rng)
    h = band_limited(g, band, rng)
    prod, diffs = truncated_product(f, h, part12, part12.k_max)
    fg = f * h
    assert np.abs(prod.values - fg.values).max() / np.abs(fg.values).max() < 1e-12
    assert diffs[-1] < 1e-10  # converged well below the truncation level
    e = make_exponential(g, (1,))
    prod2, _ = truncated_product(e, e, part12, 4)
    assert np.abs(prod2.values - np.exp(2j * g.axis())).max() < 1e-10
    with pytest.raises(InvalidInputError):
        truncated_product(f, h, part12, part12.k_max + 1)


def test_truncated_product_indicator_trend(part12):
    f = make_indicator(part12.grid, "cube")
    from logbesov.experiments import mollify

    h = mollify(make_indicator(part12.grid, "cube"), 2.0**-3)
    _, diffs = truncated_product(f, h, part12, part12.k_max)
    assert diffs == sorted(diffs, reverse=True)  # successive differences decay


def test_lower_bound_constant(part10, rng):
    g = part10.grid
    c = make_constant(g, 1.5)
    fam = [("g1", band_limited(g, 30, rng)), ("g2", band_limited(g, 60, rng))]
    bound, name = multiplier_lower_bound(c, part10, BesovParams(0, 0, 2.0, INF), fam)
    assert bound == pytest.approx(1.5, rel=1e-10)
    assert name in ("g1", "g2")


def test_lower_bound_monotone_in_family(part12, rng):
    g = part12.grid
    f = make_exponential(g, (-(1 << 7),))
    params = BesovParams(0.0, 0.0, 4.0, INF)
    fam = expo7_family(g, 7, 0.0)
    small, _ = multiplier_lower_bound(f, part12, params, fam[:2])
    full, _ = multiplier_lower_bound(f, part12, params, fam)
    assert full >= small - 1e-12


def test_lower_bound_dominates_linf(part12, rng):
    """Consistency with the multiplier-norm lower bound by ||f||_inf: for
    gallery multipliers the family estimate reaches a fixed fraction of it."""
    g = part12.grid
    params = BesovParams(0.0, 0.5, 2.0, INF)
    family = [("one", make_constant(g))] + [
        (f"rnd{t}", band_limited(g, 50, np.random.default_rng(900 + t))) for t in range(3)
    ]
    for f in (make_constant(g, 2.0), make_exponential(g, (3,))):
        bound, _ = multiplier_lower_bound(f, part12, params, family)
        assert bound >= 0.5 * lp_norm(f, INF)


def test_lower_bound_rejects_zero_member(part10):
    g = part10.grid
    f = make_constant(g)
    zero = SampledFunction(g, np.zeros(g.shape, dtype=complex))
    with pytest.raises(DegenerateInputError):
        multiplier_lower_bound(f, part10, BesovParams(0, 0, 2.0, INF), [("z", zero)])
    with pytest.raises(InvalidInputError):
        multiplier_lower_bound(f, part10, BesovParams(0, 0, 2.0, INF), [])
