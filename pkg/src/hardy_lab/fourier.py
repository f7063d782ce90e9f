"""Fourier analysis on the grid and the singular operators built from it.

Coefficient-side operators (Riesz projection, Hilbert transform, Cauchy
singular operator, Fejér and Poisson multipliers) act on ``CoeffVector`` and
are exact. ``hilbert_pv`` is a separate physical-space realization of the
Hilbert transform, a principal-value quadrature of the ``cot`` kernel, used to
cross-check the multiplier form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from hardy_lab.errors import ConfigurationError, DegreeBudgetError
from hardy_lab.grid import TWO_PI, Grid, GridFunction


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Fourier coefficients ``c_n`` for ``n = -M..M``; zero outside the window."""

    half_width: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.half_width < 0:
            raise ConfigurationError("half_width must be nonnegative")
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (2 * self.half_width + 1,):
            raise ConfigurationError(
                f"expected {2 * self.half_width + 1} coefficients, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ConfigurationError("coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, half_width: int) -> "CoeffVector":
        return cls(half_width, np.zeros(2 * half_width + 1))

    @classmethod
    def from_dict(cls, entries: Mapping[int, complex], half_width: int | None = None):
        """Build from ``{n: c_n}``; the window defaults to the largest ``|n|``."""
        if half_width is None:
            half_width = max((abs(n) for n in entries), default=0)
        coeffs = np.zeros(2 * half_width + 1, dtype=complex)
        for n, value in entries.items():
            if abs(n) > half_width:
                raise ConfigurationError(f"index {n} outside window {half_width}")
            coeffs[n + half_width] = value
        return cls(half_width, coeffs)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.half_width:
            return 0j
        return complex(self.coeffs[n + self.half_width])

    def resized(self, half_width: int) -> "CoeffVector":
        """Zero-pad or truncate to a new window."""
        out = np.zeros(2 * half_width + 1, dtype=complex)
        m = min(half_width, self.half_width)
        out[half_width - m:half_width + m + 1] = \
            self.coeffs[self.half_width - m:self.half_width + m + 1]
        return CoeffVector(half_width, out)

    def degree(self) -> int:
        """Largest ``|n|`` with a nonzero coefficient (0 for the zero vector)."""
        nz = np.nonzero(self.coeffs)[0]
        if nz.size == 0:
            return 0
        return int(np.max(np.abs(nz - self.half_width)))

    def is_analytic(self) -> bool:
        return not np.any(self.coeffs[:self.half_width])

    def _aligned(self, other: "CoeffVector"):
        m = max(self.half_width, other.half_width)
        return self.resized(m).coeffs, other.resized(m).coeffs, m

    def __add__(self, other: "CoeffVector") -> "CoeffVector":
        a, b, m = self._aligned(other)
        return CoeffVector(m, a + b)

    def __sub__(self, other: "CoeffVector") -> "CoeffVector":
        a, b, m = self._aligned(other)
        return CoeffVector(m, a - b)

    def __mul__(self, scalar) -> "CoeffVector":
        return CoeffVector(self.half_width, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "CoeffVector":
        return CoeffVector(self.half_width, -self.coeffs)

    def allclose(self, other: "CoeffVector", atol: float = 1e-12) -> bool:
        a, b, _ = self._aligned(other)
        return bool(np.max(np.abs(a - b), initial=0.0) <= atol)


def character(n: int) -> CoeffVector:
    """Coefficient vector of ``χ_n``."""
    return CoeffVector.from_dict({n: 1.0})


def _check_window(half_width: int, grid: Grid):
    if 2 * half_width + 1 > grid.n_points:
        raise DegreeBudgetError(
            f"window of half-width {half_width} does not fit a {grid.n_points}-point grid")


def analyze(f: GridFunction, half_width: int) -> CoeffVector:
    """``c_n = ⟨f, χ_n⟩`` for ``|n| <= half_width``."""
    _check_window(half_width, f.grid)
    dft = np.fft.fft(f.samples) / f.grid.n_points
    n = np.arange(-half_width, half_width + 1)
    return CoeffVector(half_width, dft[n % f.grid.n_points])


def synthesize(c: CoeffVector, grid: Grid) -> GridFunction:
    _check_window(c.half_width, grid)
    spectrum = np.zeros(grid.n_points, dtype=complex)
    spectrum[c.indices % grid.n_points] = c.coeffs
    return GridFunction(grid, np.fft.ifft(spectrum) * grid.n_points)


def riesz_project(c: CoeffVector) -> CoeffVector:
    out = c.coeffs.copy()
    out[:c.half_width] = 0
    return CoeffVector(c.half_width, out)


def hilbert_multiplier(c: CoeffVector) -> CoeffVector:
    """Conjugate function on coefficients: ``c_n ↦ -i sgn(n) c_n``."""
    return CoeffVector(c.half_width, -1j * np.sign(c.indices) * c.coeffs)


def cauchy_singular(c: CoeffVector) -> CoeffVector:
    """``S = 2P - I``: ``c_n ↦ c_n`` for ``n >= 0`` and ``-c_n`` otherwise."""
    sign = np.where(c.indices >= 0, 1.0, -1.0)
    return CoeffVector(c.half_width, sign * c.coeffs)


def fejer_smooth(c: CoeffVector, order: int) -> CoeffVector:
    """Convolution with the Fejér kernel ``F_order``."""
    if order < 0:
        raise ConfigurationError("Fejér order must be nonnegative")
    weights = np.clip(1.0 - np.abs(c.indices) / (order + 1), 0.0, None)
    return CoeffVector(c.half_width, weights * c.coeffs)


def _check_radius(r: float):
    if not 0.0 <= r < 1.0:
        raise ConfigurationError(f"radius must lie in [0, 1), got {r}")


def poisson_extend(c: CoeffVector, r: float) -> CoeffVector:
    """Coefficients of the harmonic extension on the circle of radius ``r``."""
    _check_radius(r)
    return CoeffVector(c.half_width, r ** np.abs(c.indices) * c.coeffs)


def analytic_extend(c: CoeffVector, r: float) -> CoeffVector:
    """Coefficients of ``u(re^{iϑ})`` where ``u = f * (P_r + iQ_r)``.

    For real ``f`` the boundary values of ``u`` are ``f + i Cf``.
    """
    _check_radius(r)
    n = c.indices
    weights = np.where(n > 0, 2.0 * r ** np.abs(n), 0.0)
    weights[n == 0] = 1.0
    return CoeffVector(c.half_width, weights * c.coeffs)


def poisson_kernel(theta, r: float):
    return (1 - r * r) / (1 - 2 * r * np.cos(theta) + r * r)


def conjugate_poisson_kernel(theta, r: float):
    return 2 * r * np.sin(theta) / (1 - 2 * r * np.cos(theta) + r * r)


def poisson_integral(f: GridFunction, r: float, conjugate: bool = True) -> GridFunction:
    """Quadrature of ``(1/2π) ∫ f(θ) (P_r + iQ_r)(ϑ - θ) dθ`` at every node.

    With ``conjugate=False`` only the Poisson kernel is used. This is the
    physical-space route; ``analytic_extend``/``poisson_extend`` are the
    coefficient route.
    """
    _check_radius(r)
    grid = f.grid
    kernel = poisson_kernel(grid.nodes, r).astype(complex)
    if conjugate:
        kernel = kernel + 1j * conjugate_poisson_kernel(grid.nodes, r)
    return GridFunction(grid, _circular_convolve(f.samples, kernel) / grid.n_points)


def _circular_convolve(x: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # out[j] = sum_k x[k] kernel[j - k]
    return np.fft.ifft(np.fft.fft(x) * np.fft.fft(kernel))


def hilbert_pv(f: GridFunction) -> GridFunction:
    """Principal-value quadrature of ``(1/2π) p.v.∫ f(θ) cot((ϑ-θ)/2) dθ``.

    Alternating-node rule: at node ``j`` the sum runs over nodes ``k`` with
    ``j - k`` odd, weight ``2/N``. The singular node is never touched and the
    nodes pair up symmetrically around it, so the odd kernel cancels
    constants. The rule reproduces ``-i sgn(n)`` exactly for ``|n| < N/2``.
    """
    n = f.grid.n_points
    d = np.arange(n)
    kernel = np.zeros(n)
    odd = d % 2 == 1
    kernel[odd] = 2.0 / (n * np.tan(np.pi * d[odd] / n))
    out = _circular_convolve(f.samples, kernel)
    if not np.any(f.imag):
        out = out.real
    return GridFunction(f.grid, out)


def hilbert_fft(f: GridFunction) -> GridFunction:
    """Hilbert transform through the full DFT, Nyquist mode discarded."""
    n = f.grid.n_points
    k = np.fft.fftfreq(n, 1.0 / n)
    mult = -1j * np.sign(k)
    mult[n // 2] = 0
    return GridFunction(f.grid, np.fft.ifft(np.fft.fft(f.samples) * mult))


def half_circle_conjugate(eta):
    """Closed form of ``C I_{[-π,0]}`` at angle ``eta``: ``-(1/π) log|tan(η/2)|``.

    On ``(0, π)`` this is ``(1/π)[log sin((η+π)/2) - log sin(η/2)]``, obtained
    by integrating the ``cot`` kernel over ``[-π, 0]``. Singular at ``η ∈ {0, π}``.
    """
    return -np.log(np.abs(np.tan(np.asarray(eta) / 2.0))) / np.pi


def power_map(n: int) -> Callable[[np.ndarray], np.ndarray]:
    """The inner function ``z ↦ z^n``."""
    return lambda z: z ** n


def blaschke_map(alpha: complex) -> Callable[[np.ndarray], np.ndarray]:
    """The inner function ``z ↦ z (z - α)/(1 - conj(α) z)``, vanishing at 0."""
    if abs(alpha) >= 1:
        raise ConfigurationError("Blaschke zero must lie in the open disc")
    return lambda z: z * (z - alpha) / (1 - np.conj(alpha) * z)


def preimage_fraction(u: Callable, grid: Grid, start: float, stop: float) -> float:
    """Fraction of grid nodes ``t`` with ``u(t)`` in the half-open arc ``[start, stop)``."""
    angles = np.mod(np.angle(u(grid.points)), TWO_PI)
    length = stop - start
    if length >= TWO_PI:
        return 1.0
    offset = np.mod(angles - start, TWO_PI)
    return float(np.mean(offset < length))
