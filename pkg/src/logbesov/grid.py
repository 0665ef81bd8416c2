"""Periodic sampling grid on the torus [-pi, pi)^dim and discrete transforms.

Everything downstream works with trigonometric polynomials sampled on a
regular grid of N = 2^J points per axis, with integer frequencies in
[-N/2, N/2).  Integer frequencies make e^{ik.x} exactly periodic, so the
exponential test functions alias-free as long as |k_i| < N/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, InvalidInputError

INF = math.inf

TWO_PI = 2.0 * math.pi


def is_inf(p: float) -> bool:
    return math.isinf(p)


def check_exponent(p: float, name: str = "p") -> float:
    """Validate a (quasi-)norm exponent in (0, inf]."""
    if not (p > 0):
        raise InvalidInputError(f"{name} must be positive or INF, got {p!r}")
    return float(p)


def conjugate_exponent(p: float) -> float:
    """Conjugate index: 1/p + 1/p' = 1, with conjugate(1)=INF, conjugate(INF)=1."""
    p = check_exponent(p)
    if p < 1:
        raise InvalidInputError(f"conjugate exponent undefined for p={p} < 1")
    if is_inf(p):
        return 1.0
    if p == 1.0:
        return INF
    return p / (p - 1.0)


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid: N = 2^J points per axis on [-pi, pi)^dim, dim in {1, 2}."""

    dim: int
    log2_samples: int

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise InvalidInputError(f"dim must be 1 or 2, got {self.dim}")
        if self.log2_samples < 6:
            raise InvalidInputError(
                f"need N = 2^J >= 64 samples per axis, got J={self.log2_samples}"
            )

    @property
    def n_samples(self) -> int:
        return 1 << self.log2_samples

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n_samples

    @property
    def k_max(self) -> int:
        # Deepest dyadic frequency level; 3*2^(k_max-1) = (3/8) N <= N/2 keeps
        # the top annulus inside the lattice.
        return self.log2_samples - 2

    @property
    def l_max(self) -> int:
        # Deepest dyadic-cube level with >= 8 samples per axis (accuracy guard).
        return int(math.floor(math.log2(self.n_samples / (8.0 * TWO_PI))))

    def axis(self) -> np.ndarray:
        n = self.n_samples
        return -math.pi + self.spacing * np.arange(n)

    def points(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays, broadcastable to the sample shape."""
        x = self.axis()
        if self.dim == 1:
            return (x,)
        return (x[:, None], x[None, :])

    def freq_axis(self) -> np.ndarray:
        """Integer frequencies in FFT layout."""
        n = self.n_samples
        return np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)

    def freqs(self) -> tuple[np.ndarray, ...]:
        m = self.freq_axis()
        if self.dim == 1:
            return (m,)
        return (m[:, None], m[None, :])

    def freq_radius(self) -> np.ndarray:
        """Euclidean |m| over the frequency lattice, FFT layout."""
        ms = self.freqs()
        if self.dim == 1:
            return np.abs(ms[0]).astype(np.float64)
        return np.hypot(ms[0].astype(np.float64), ms[1].astype(np.float64))

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_samples,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim


@dataclass
class SampledFunction:
    """Complex samples of a function on the grid (row-major, shape (N,)*dim)."""

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.size != self.grid.n_samples**self.grid.dim:
            raise InvalidInputError(
                f"expected {self.grid.n_samples ** self.grid.dim} samples, got {vals.size}"
            )
        self.values = vals.reshape(self.grid.shape)

    def copy(self) -> "SampledFunction":
        return SampledFunction(self.grid, self.values.copy())

    def _check_same_grid(self, other: "SampledFunction") -> None:
        if other.grid != self.grid:
            raise InvalidInputError("grid mismatch between operands")

    def __mul__(self, other):
        if isinstance(other, SampledFunction):
            self._check_same_grid(other)
            return SampledFunction(self.grid, self.values * other.values)
        return SampledFunction(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, SampledFunction):
            self._check_same_grid(other)
            return SampledFunction(self.grid, self.values + other.values)
        return SampledFunction(self.grid, self.values + other)

    def __sub__(self, other):
        if isinstance(other, SampledFunction):
            self._check_same_grid(other)
            return SampledFunction(self.grid, self.values - other.values)
        return SampledFunction(self.grid, self.values - other)

    def __neg__(self):
        return SampledFunction(self.grid, -self.values)


@dataclass
class FrequencyField:
    """Fourier coefficients indexed by integer frequencies (FFT layout)."""

    grid: GridSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.size != self.grid.n_samples**self.grid.dim:
            raise InvalidInputError("coefficient array size does not match grid")
        self.coeffs = c.reshape(self.grid.shape)

    def to_function(self) -> SampledFunction:
        return synthesize(self.grid, self.coeffs)


def spectrum(f: SampledFunction) -> np.ndarray:
    """Fourier coefficients c_m with f(x) = sum_m c_m e^{i m.x} on samples."""
    return np.fft.fftn(f.values) / f.values.size


def frequency_field(f: SampledFunction) -> FrequencyField:
    return FrequencyField(f.grid, spectrum(f))


def synthesize(grid: GridSpec, coeffs: np.ndarray) -> SampledFunction:
    vals = np.fft.ifftn(np.asarray(coeffs, dtype=np.complex128)) * coeffs.size
    return SampledFunction(grid, vals)


def apply_symbol(f: SampledFunction, symbol: np.ndarray) -> SampledFunction:
    """Fourier multiplier: F^{-1}(symbol * F f)."""
    c = np.fft.fftn(f.values)
    return SampledFunction(f.grid, np.fft.ifftn(symbol * c))


def lp_norm(f: SampledFunction, p: float) -> float:
    """Discrete L^p norm: (sum |f(x_i)|^p dx)^(1/p); p=INF is max |f|."""
    check_exponent(p)
    a = np.abs(f.values)
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("non-finite samples rejected")
    if is_inf(p):
        return float(a.max())
    return float((np.sum(a**p) * f.grid.cell_volume) ** (1.0 / p))


def band_energy_fraction(f: SampledFunction, radius: float) -> float:
    """Fraction of spectral energy strictly above Euclidean frequency `radius`."""
    c = np.abs(spectrum(f)) ** 2
    total = float(c.sum())
    if total == 0.0:
        return 0.0
    outside = float(c[f.grid.freq_radius() > radius].sum())
    return outside / total


def make_constant(grid: GridSpec, value: complex = 1.0) -> SampledFunction:
    return SampledFunction(grid, np.full(grid.shape, value, dtype=np.complex128))


def random_band_limited(
    grid: GridSpec, band: float, rng: np.random.Generator
) -> SampledFunction:
    """Random field with i.i.d. complex Gaussian coefficients for |m| <= band."""
    if band >= grid.n_samples // 2:
        raise AliasingError(f"band {band} exceeds the lattice Nyquist range")
    shape = grid.shape
    coeffs = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    coeffs[grid.freq_radius() > band] = 0.0
    return synthesize(grid, coeffs)
