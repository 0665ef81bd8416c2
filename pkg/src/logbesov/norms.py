"""Function-space norms: logarithmic Besov, Triebel-Lizorkin at p = infinity,
weighted sequence norms, moduli of smoothness, difference-defined spaces, and
the Dini functional.

Every norm is truncated at the grid's K_max (or at the resolution floor for
t-integrals) and reports its truncation diagnostic; nothing is silently
absorbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from .cubes import level_cube_means
from .errors import InvalidInputError, ResolutionError
from .grid import (
    INF,
    GridSpec,
    SampledFunction,
    band_energy_fraction,
    check_exponent,
    is_inf,
    lp_norm,
)
from .partition import DyadicPartition, SpectralDecomposition, decompose

PI = math.pi
LN2 = math.log(2.0)


@dataclass(frozen=True)
class BesovParams:
    """(s, b, p, q); p, q in (0, INF] are quasi-norm exponents."""

    s: float
    b: float
    p: float
    q: float

    def __post_init__(self) -> None:
        check_exponent(self.p, "p")
        check_exponent(self.q, "q")


@dataclass(frozen=True)
class DiffParams:
    """Difference-space parameters; the modulus order m must exceed s."""

    s: float
    b: float
    d: float
    p: float
    q: float
    m: int = 1

    def __post_init__(self) -> None:
        check_exponent(self.p, "p")
        check_exponent(self.q, "q")
        if self.m <= self.s:
            raise InvalidInputError(f"modulus order m={self.m} must exceed s={self.s}")


@dataclass
class NormResult:
    """A norm value plus its truncation diagnostics."""

    value: float
    tail: float = 0.0
    per_level: list[float] = field(default_factory=list)

    def __float__(self) -> float:
        return self.value


def _ensure_decomposition(
    f: SampledFunction, partition: DyadicPartition, dec: SpectralDecomposition | None
) -> SpectralDecomposition:
    if dec is not None:
        return dec
    return decompose(f, partition)


def _lq_combine(terms: np.ndarray, q: float) -> float:
    if is_inf(q):
        return float(terms.max()) if terms.size else 0.0
    return float(np.sum(terms**q) ** (1.0 / q))


def besov_norm(
    f: SampledFunction,
    partition: DyadicPartition,
    params: BesovParams,
    *,
    dec: SpectralDecomposition | None = None,
) -> NormResult:
    """|| {2^{ks} (1+k)^b S_k f} ||_{l^q(L^p)}, truncated at K_max.

    The tail diagnostic is the fraction of spectral energy above the top
    resolved annulus (2^{K_max - 1}); for band-limited inputs it is zero.
    """
    dec = _ensure_decomposition(f, partition, dec)
    per = []
    for k, piece in enumerate(dec.pieces):
        w = 2.0 ** (k * params.s) * (1.0 + k) ** params.b
        per.append(w * lp_norm(piece, params.p))
    terms = np.asarray(per)
    tail = band_energy_fraction(f, 2.0 ** (partition.k_max - 1))
    return NormResult(_lq_combine(terms, params.q), tail, per)


def seq_norm(pieces, s: float, b: float, p: float, q: float) -> float:
    """Weighted sequence norm of a list of functions (the l^q_{s,b}(L^p) norm)."""
    per = [
        2.0 ** (k * s) * (1.0 + k) ** b * lp_norm(u, p) for k, u in enumerate(pieces)
    ]
    return _lq_combine(np.asarray(per), q)


def tl_norm_inf(
    f: SampledFunction,
    partition: DyadicPartition,
    s: float,
    b: float,
    q: float,
    *,
    dec: SpectralDecomposition | None = None,
) -> NormResult:
    """Triebel-Lizorkin norm at p = infinity:

    sup over cube levels k and cubes Q of (mean_Q sum_{j>=k} [2^{js}(1+j)^b
    |S_j f|]^q)^{1/q}; cube levels are limited by the grid guard and the
    j-sum is truncated at K_max.
    """
    check_exponent(q, "q")
    dec = _ensure_decomposition(f, partition, dec)
    grid = f.grid
    k_top = min(partition.k_max, grid.l_max)
    best_per_level: list[float] = [0.0] * (k_top + 1)
    if is_inf(q):
        running = np.zeros(grid.shape)
        for k in range(partition.k_max, -1, -1):
            w = 2.0 ** (k * s) * (1.0 + k) ** b
            np.maximum(running, w * np.abs(dec.pieces[k].values), out=running)
            if k <= k_top:
                best_per_level[k] = float(running.max())
    else:
        running = np.zeros(grid.shape)
        for k in range(partition.k_max, -1, -1):
            w = 2.0 ** (k * s) * (1.0 + k) ** b
            running += (w * np.abs(dec.pieces[k].values)) ** q
            if k <= k_top:
                means = level_cube_means(grid, running, k)
                best_per_level[k] = float(means.max() ** (1.0 / q))
    tail = band_energy_fraction(f, 2.0 ** (partition.k_max - 1))
    return NormResult(max(best_per_level), tail, best_per_level)


# ---------------------------------------------------------------------------
# moduli of smoothness


def _binomial_weights(m: int) -> np.ndarray:
    return np.array([(-1.0) ** (m - j) * comb(m, j) for j in range(m + 1)])


def _difference_norm_grid(f: SampledFunction, shift, m: int, p: float) -> float:
    """||Delta_h^m f||_p for an integer grid shift (exact torus translation)."""
    w = _binomial_weights(m)
    vals = np.zeros_like(f.values)
    for j in range(m + 1):
        if f.grid.dim == 1:
            vals += w[j] * np.roll(f.values, -j * shift[0])
        else:
            vals += w[j] * np.roll(f.values, (-j * shift[0], -j * shift[1]), axis=(0, 1))
    return lp_norm(SampledFunction(f.grid, vals), p)


def _difference_norm_spectral(
    raw_fft: np.ndarray, grid: GridSpec, h: np.ndarray, m: int, p: float
) -> float:
    """||Delta_h^m f||_p for an arbitrary real shift via the exact phase factor
    (e^{i m.h} - 1)^m on the trigonometric interpolant; `raw_fft` is the
    unnormalized forward FFT of the samples."""
    phase = np.zeros(grid.shape, dtype=np.complex128)
    for comp, ms in zip(h, grid.freqs()):
        phase = phase + comp * ms
    mult = (np.exp(1j * phase) - 1.0) ** m
    vals = np.fft.ifftn(mult * raw_fft)
    return lp_norm(SampledFunction(grid, vals), p)


def _shift_candidates_1d(grid: GridSpec, t: float) -> list[tuple[int]]:
    top = int(math.ceil(t / grid.spacing)) - 1
    top = min(top, grid.n_samples // 2)
    return [(s,) for s in range(1, top + 1) if s * grid.spacing < t]


def _shift_candidates_2d(grid: GridSpec, t: float, budget: int = 4096) -> list[tuple[int, int]]:
    top = min(int(math.ceil(t / grid.spacing)), grid.n_samples // 2)
    cands = []
    stride = 1
    while (2 * top // stride + 1) ** 2 // 2 > budget:
        stride *= 2
    for s1 in range(-top, top + 1, stride):
        for s2 in range(0, top + 1, stride):
            if s2 == 0 and s1 <= 0:
                continue  # half-plane: Delta_{-h} has the same norm
            if (s1 * s1 + s2 * s2) * grid.spacing**2 < t * t:
                cands.append((s1, s2))
    return cands


def modulus(f: SampledFunction, m: int, t: float, p: float) -> float:
    """m-th order modulus of smoothness: sup_{|h| < t} ||Delta_h^m f||_p.

    h runs over grid shifts of torus length < t plus near-boundary shifts at
    |h| = t(1 - 1e-9) evaluated spectrally, so suprema attained as |h| -> t
    are captured to high accuracy.
    """
    if m < 1:
        raise InvalidInputError("modulus order must be >= 1")
    if not (0.0 < t <= PI):
        raise InvalidInputError(f"scale t must lie in (0, pi], got {t}")
    if t < f.grid.spacing:
        raise ResolutionError(f"scale t={t:.3e} below one grid cell {f.grid.spacing:.3e}")
    check_exponent(p, "p")
    grid = f.grid
    best = 0.0
    if grid.dim == 1:
        for s in _shift_candidates_1d(grid, t):
            best = max(best, _difference_norm_grid(f, s, m, p))
        boundary_dirs = [np.array([1.0])]
    else:
        for s in _shift_candidates_2d(grid, t):
            best = max(best, _difference_norm_grid(f, s, m, p))
        angles = np.linspace(0.0, PI, 32, endpoint=False)
        boundary_dirs = [np.array([math.cos(a), math.sin(a)]) for a in angles]
    coeffs = np.fft.fftn(f.values)
    r = t * (1.0 - 1e-9)
    for d in boundary_dirs:
        best = max(best, _difference_norm_spectral(coeffs, grid, r * d, m, p))
    return best


def _dyadic_scale_floor(grid: GridSpec) -> int:
    """Largest j with 2^-j still at least one grid cell."""
    return int(math.floor(-math.log2(grid.spacing)))


def dini_norm(f: SampledFunction, p: float = INF) -> NormResult:
    """Dini functional int_0^{1/2} omega_1(f, t)_p dt/t, trapezoid rule in
    log t over dyadic nodes t_j = 2^{-j}; the tail diagnostic is the last
    resolved omega value (bounds the unresolved head of the integral for
    Lipschitz-type moduli)."""
    j_top = _dyadic_scale_floor(f.grid)
    omegas = [modulus(f, 1, 2.0**-j, p) for j in range(1, j_top + 1)]
    value = sum(
        LN2 * 0.5 * (omegas[i] + omegas[i + 1]) for i in range(len(omegas) - 1)
    )
    return NormResult(float(value), omegas[-1] if omegas else 0.0, omegas)


def diffspace_norm(f: SampledFunction, params: DiffParams) -> NormResult:
    """Difference-defined space norm

        ||f||_p + ( sum_j { 2^{js} (1+j)^b [1+ln(1+j)]^d omega_m(f, 2^-j)_p }^q ln 2 )^{1/q},

    the t-integral discretized over dyadic t_j = 2^{-j}, j = 0..j_max, with
    dt/t -> ln 2; q = INF takes the sup of the weighted omegas.
    """
    j_top = _dyadic_scale_floor(f.grid)
    terms = []
    for j in range(0, j_top + 1):
        w = 2.0 ** (j * params.s) * (1.0 + j) ** params.b
        w *= (1.0 + math.log(1.0 + j)) ** params.d
        terms.append(w * modulus(f, params.m, 2.0**-j, params.p))
    arr = np.asarray(terms)
    if is_inf(params.q):
        semi = float(arr.max())
    else:
        semi = float((np.sum(arr**params.q) * LN2) ** (1.0 / params.q))
    base = lp_norm(f, params.p)
    return NormResult(base + semi, terms[-1] if terms else 0.0, terms)


# ---------------------------------------------------------------------------
# logarithmic-weight sum brackets


@dataclass(frozen=True)
class LogSumBounds:
    value: float
    lower: float
    upper: float

    def bracket_holds(self) -> bool:
        return self.lower <= self.value <= self.upper


def log_sum_bounds(b: float, k: int, which: str = "tail") -> LogSumBounds:
    """Exact evaluation plus the analytic bracket of the logarithmic sums.

    which='tail': sum_{j>=k} (1+j)^{-b} for b > 1, bracketed by
    [(k+1)^{1-b}/(b-1), (1 + 1/(b-1)) (k+1)^{1-b}]; which='head':
    sum_{j=0}^{k} (1+j)^{b} for b > -1, bracketed by
    [(k+1)^{b+1}/(b+1), (1 + 1/(b+1)) (k+1)^{b+1}].
    """
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    if which == "tail":
        if b <= 1:
            raise InvalidInputError("tail sum needs b > 1")
        value = float(hurwitz_zeta(b, k + 1))
        lower = (k + 1.0) ** (1.0 - b) / (b - 1.0)
        upper = (1.0 + 1.0 / (b - 1.0)) * (k + 1.0) ** (1.0 - b)
        return LogSumBounds(value, lower, upper)
    if which == "head":
        if b <= -1:
            raise InvalidInputError("head sum needs b > -1")
        value = float(np.sum((1.0 + np.arange(k + 1)) ** b))
        if b >= 0:
            lower = (k + 1.0) ** (b + 1.0) / (b + 1.0)
        else:
            # integral comparison from 1; the naive (k+1)^{b+1}/(b+1) bound
            # overshoots the sum for decreasing terms
            lower = ((k + 2.0) ** (b + 1.0) - 1.0) / (b + 1.0)
        upper = (1.0 + 1.0 / (b + 1.0)) * (k + 1.0) ** (b + 1.0)
        return LogSumBounds(value, lower, upper)
    raise InvalidInputError("which must be 'tail' or 'head'")
