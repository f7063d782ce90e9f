"""Uniform grids on the unit circle and functions sampled on them.

The circle carries the normalized measure ``dm = dθ / 2π``. Nodes are
``θ_k = 2πk/N`` for ``k = 0..N-1``; angles given on ``[-π, π]`` are reduced
mod 2π before they touch the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from hardy_lab.errors import ConfigurationError, GridMismatchError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Grid:
    """An ``n_points``-node uniform grid on the unit circle."""

    n_points: int

    def __post_init__(self):
        n = self.n_points
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise ConfigurationError(f"grid size must be an integer, got {n!r}")
        if n < 8 or n & (n - 1):
            raise ConfigurationError(
                f"grid size must be a power of two >= 8, got {n}")

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n_points) / self.n_points

    @property
    def points(self) -> np.ndarray:
        """Nodes as unimodular complex numbers ``e^{iθ_k}``."""
        return np.exp(1j * self.nodes)

    @property
    def step(self) -> float:
        return TWO_PI / self.n_points

    def function(self, samples) -> "GridFunction":
        return GridFunction(self, samples)

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> "GridFunction":
        """Evaluate ``func`` (a function of the angle) at every node."""
        return GridFunction(self, np.broadcast_to(func(self.nodes), (self.n_points,)))

    def constant(self, value=1.0) -> "GridFunction":
        return GridFunction(self, np.full(self.n_points, value, dtype=complex))

    def character(self, n: int) -> "GridFunction":
        """The monomial ``χ_n(t) = t^n``."""
        return GridFunction(self, np.exp(1j * n * self.nodes))

    def arc_mask(self, start: float, stop: float) -> np.ndarray:
        """Boolean mask of nodes in the half-open arc from ``start`` to ``stop``.

        Angles are in radians and may be given on any branch; the arc runs
        counter-clockwise. A node sitting exactly on ``start`` belongs to the
        arc, one sitting on ``stop`` does not. Arcs of length >= 2π cover
        every node.
        """
        n = self.n_points
        length = (stop - start) * n / TWO_PI
        if length >= n:
            return np.ones(n, dtype=bool)
        if length <= 0:
            return np.zeros(n, dtype=bool)
        offset = np.mod(np.arange(n) - start * n / TWO_PI + 1e-9, n)
        return offset < length

    def indicator(self, start: float, stop: float, midpoint: bool = False) -> "GridFunction":
        """Indicator of the half-open arc ``[start, stop)``.

        With ``midpoint=True`` nodes lying exactly on an endpoint get the value
        1/2, the limit of the Fourier series at a jump. Quadratures of singular
        kernels converge much better pointwise with this convention.
        """
        values = self.arc_mask(start, stop).astype(float)
        if midpoint and 0 < stop - start < TWO_PI:
            for end in (start, stop):
                pos = end * self.n_points / TWO_PI
                k = round(pos)
                if abs(pos - k) < 1e-9:
                    values[k % self.n_points] = 0.5
        return GridFunction(self, values)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples of a function at the nodes of ``grid``."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=complex)
        if samples.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"expected {self.grid.n_points} samples, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ConfigurationError("samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def _check(self, other: "GridFunction"):
        if other.grid.n_points != self.grid.n_points:
            raise GridMismatchError(
                f"grid sizes differ: {self.grid.n_points} vs {other.grid.n_points}")

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return other.samples
        return other

    def __add__(self, other):
        return GridFunction(self.grid, self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.grid, self.samples - self._coerce(other))

    def __rsub__(self, other):
        return GridFunction(self.grid, self._coerce(other) - self.samples)

    def __mul__(self, other):
        return GridFunction(self.grid, self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GridFunction(self.grid, self.samples / self._coerce(other))

    def __neg__(self):
        return GridFunction(self.grid, -self.samples)

    def __abs__(self):
        return GridFunction(self.grid, np.abs(self.samples))

    def conj(self) -> "GridFunction":
        return GridFunction(self.grid, np.conj(self.samples))

    @property
    def real(self) -> np.ndarray:
        return self.samples.real

    @property
    def imag(self) -> np.ndarray:
        return self.samples.imag

    def sup(self) -> float:
        return float(np.max(np.abs(self.samples)))


def make_grid(n: int) -> Grid:
    return Grid(n)


def integrate(f: GridFunction) -> complex:
    """Riemann sum for ``∫_T f dm``.

    Exact for trigonometric polynomials of degree < N. A character ``χ_{kN}``
    aliases to the constant 1, so callers keep degrees below N.
    """
    return complex(np.mean(f.samples))


def pairing(f: GridFunction, g: GridFunction) -> complex:
    """``⟨f, g⟩ = ∫ f conj(g) dm``, conjugate-linear in ``g``."""
    f._check(g)
    return complex(np.mean(f.samples * np.conj(g.samples)))


def pointwise_multiply(f: GridFunction, g: GridFunction) -> GridFunction:
    f._check(g)
    return GridFunction(f.grid, f.samples * g.samples)


def same_grid(*functions) -> Grid:
    """Return the common grid of ``functions`` or raise ``GridMismatchError``."""
    grid = functions[0].grid
    for other in functions[1:]:
        if other.grid.n_points != grid.n_points:
            raise GridMismatchError(
                f"grid sizes differ: {grid.n_points} vs {other.grid.n_points}")
    return grid
