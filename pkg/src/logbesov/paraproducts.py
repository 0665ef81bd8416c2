"""Paraproduct decomposition of pointwise products and lower bounds on the
multiplier operator norm from swept test families.

Products are computed pointwise on the grid; inputs band-limited below
2^{K_max-3} keep the frequency-support bookkeeping exact on the lattice
(no nonlinear aliasing), which is how the decomposition tests run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidInputError
from .grid import SampledFunction, lp_norm, spectrum
from .norms import BesovParams, besov_norm
from .partition import (
    DyadicPartition,
    SpectralDecomposition,
    decompose,
    partial_sum,
)


def _cumsums(dec: SpectralDecomposition) -> list[np.ndarray]:
    """Partial sums S^k f as arrays, k = 0..K_max (telescoped from pieces)."""
    out = []
    acc = np.zeros(dec.grid.shape, dtype=np.complex128)
    for piece in dec.pieces:
        acc = acc + piece.values
        out.append(acc.copy())
    return out


def paraproduct(
    f: SampledFunction,
    g: SampledFunction,
    partition: DyadicPartition,
    which: int,
    *,
    dec_f: SpectralDecomposition | None = None,
    dec_g: SpectralDecomposition | None = None,
) -> SampledFunction:
    """One of the three paraproducts of the product f g (sums truncated at
    K_max):

        1: sum_{k>=2} (S^{k-2} f)(S_k g)   (low-high)
        2: sum_k sum_{|i|<=1} (S_{k+i} f)(S_k g)   (comparable)
        3: sum_{k>=2} (S_k f)(S^{k-2} g)   (high-low)
    """
    if which not in (1, 2, 3):
        raise InvalidInputError("which must be 1, 2, or 3")
    dec_f = dec_f or decompose(f, partition)
    dec_g = dec_g or decompose(g, partition)
    k_top = partition.k_max
    total = np.zeros(f.grid.shape, dtype=np.complex128)
    if which == 1:
        cums_f = _cumsums(dec_f)
        for k in range(2, k_top + 1):
            total += cums_f[k - 2] * dec_g.pieces[k].values
    elif which == 3:
        cums_g = _cumsums(dec_g)
        for k in range(2, k_top + 1):
            total += dec_f.pieces[k].values * cums_g[k - 2]
    else:
        for k in range(0, k_top + 1):
            for i in (-1, 0, 1):
                if 0 <= k + i <= k_top:
                    total += dec_f.pieces[k + i].values * dec_g.pieces[k].values
    return SampledFunction(f.grid, total)


def pi2_summand(
    f: SampledFunction,
    g: SampledFunction,
    partition: DyadicPartition,
    k: int,
    *,
    dec_f: SpectralDecomposition | None = None,
    dec_g: SpectralDecomposition | None = None,
) -> SampledFunction:
    """k-th comparable-frequency summand sum_{|i|<=1} (S_{k+i} f)(S_k g)."""
    dec_f = dec_f or decompose(f, partition)
    dec_g = dec_g or decompose(g, partition)
    total = np.zeros(f.grid.shape, dtype=np.complex128)
    for i in (-1, 0, 1):
        if 0 <= k + i <= partition.k_max:
            total += dec_f.pieces[k + i].values * dec_g.pieces[k].values
    return SampledFunction(f.grid, total)


@dataclass
class ProductReport:
    """The three paraproducts and the reconstruction residual."""

    pi1: SampledFunction
    pi2: SampledFunction
    pi3: SampledFunction
    residual: float

    @property
    def total(self) -> SampledFunction:
        return self.pi1 + self.pi2 + self.pi3


def product_report(
    f: SampledFunction, g: SampledFunction, partition: DyadicPartition
) -> ProductReport:
    """Decompose f g and report ||Pi1+Pi2+Pi3 - f g||_2 / ||f g||_2."""
    dec_f = decompose(f, partition)
    dec_g = decompose(g, partition)
    parts = [
        paraproduct(f, g, partition, w, dec_f=dec_f, dec_g=dec_g) for w in (1, 2, 3)
    ]
    fg = f * g
    err = lp_norm(parts[0] + parts[1] + parts[2] - fg, 2.0)
    denom = lp_norm(fg, 2.0)
    residual = err / denom if denom > 0 else err
    return ProductReport(parts[0], parts[1], parts[2], residual)


def truncated_product(
    f: SampledFunction,
    g: SampledFunction,
    partition: DyadicPartition,
    j: int,
) -> tuple[SampledFunction, list[float]]:
    """(S^j f)(S^j g), plus the L^2 norms of the last three successive
    differences (S^i f)(S^i g) - (S^{i-1} f)(S^{i-1} g) as a convergence
    diagnostic."""
    if j < 0 or j > partition.k_max:
        raise InvalidInputError(f"truncation level {j} outside [0, {partition.k_max}]")
    prods = {}
    for i in range(max(0, j - 3), j + 1):
        prods[i] = partial_sum(f, partition, i) * partial_sum(g, partition, i)
    diffs = [
        lp_norm(prods[i] - prods[i - 1], 2.0)
        for i in range(max(1, j - 2), j + 1)
        if i - 1 in prods
    ]
    return prods[j], diffs


def multiplier_lower_bound(
    f: SampledFunction,
    partition: DyadicPartition,
    params: BesovParams,
    family,
) -> tuple[float, str]:
    """max over the family of ||f g||_B / ||g||_B — a lower bound for the
    multiplier operator norm of f on the (s, b, p, q) space.

    `family` is a sequence of (name, SampledFunction) pairs or bare
    functions; returns (bound, argmax name).
    """
    named = []
    for idx, item in enumerate(family):
        if isinstance(item, tuple):
            named.append(item)
        else:
            named.append((f"member{idx}", item))
    if not named:
        raise InvalidInputError("family must be nonempty")
    best = -math.inf
    best_name = ""
    for name, g in named:
        denom = besov_norm(g, partition, params).value
        if denom <= 0:
            raise DegenerateInputError(f"family member {name!r} has zero norm")
        ratio = besov_norm(f * g, partition, params).value / denom
        if ratio > best:
            best, best_name = ratio, name
    return best, best_name


def summand_band_energy(
    h: SampledFunction, radius_lo: float, radius_hi: float
) -> float:
    """Relative spectral energy of h outside the annulus [radius_lo, radius_hi]."""
    c = np.abs(spectrum(h)) ** 2
    total = float(c.sum())
    if total == 0.0:
        return 0.0
    rho = h.grid.freq_radius()
    outside = float(c[(rho < radius_lo) | (rho > radius_hi)].sum())
    return outside / total
