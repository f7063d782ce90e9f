"""Toeplitz matrices and Toeplitz operators ``T_a f = P(a f)``.

A symbol is a ``CoeffVector``. Products ``a f`` are formed on a grid large
enough that no frequency aliases, so every coefficient identity here holds
to rounding error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from hardy_lab.errors import ConfigurationError, DegreeBudgetError
from hardy_lab.fourier import CoeffVector, analyze, character, riesz_project, synthesize
from hardy_lab.grid import Grid, GridFunction, pairing
from hardy_lab.optimize import maximize
from hardy_lab.spaces import SpaceSpec, space_norm, spec_grid

Symbol = CoeffVector


@dataclass(frozen=True, eq=False)
class ToeplitzMatrix:
    """``(n+1) x (n+1)`` matrix with ``entry(k, j) = a_{k-j}``.

    ``diagonals`` holds ``a_{-n}, ..., a_n``.
    """

    order: int
    diagonals: np.ndarray

    def __post_init__(self):
        d = np.array(self.diagonals, dtype=complex)
        if d.shape != (2 * self.order + 1,):
            raise ConfigurationError(
                f"expected {2 * self.order + 1} diagonals, got {d.shape}")
        d.setflags(write=False)
        object.__setattr__(self, "diagonals", d)

    def diagonal(self, d: int) -> complex:
        return complex(self.diagonals[d + self.order])

    @property
    def entries(self) -> np.ndarray:
        n = self.order
        column = self.diagonals[n:]           # a_0, a_1, ..., a_n
        row = self.diagonals[n::-1]           # a_0, a_{-1}, ..., a_{-n}
        return scipy.linalg.toeplitz(column, row)

    def adjoint(self) -> "ToeplitzMatrix":
        return ToeplitzMatrix(self.order, np.conj(self.diagonals[::-1]))

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """``entries @ x`` through a circulant embedding of size ``2(n+1)``."""
        n = self.order
        size = 2 * (n + 1)
        circ = np.zeros(size, dtype=complex)
        circ[:n + 1] = self.diagonals[n:]
        circ[n + 2:] = self.diagonals[:n]
        padded = np.zeros(size, dtype=complex)
        padded[:n + 1] = x
        return np.fft.ifft(np.fft.fft(circ) * np.fft.fft(padded))[:n + 1]


class StructureViolation(NamedTuple):
    """Worst non-constant diagonal found by ``matrix_to_symbol``."""

    diagonal: int
    deviation: float


class NormBound(NamedTuple):
    value: float
    certificate: CoeffVector


def toeplitz_matrix(a: Symbol, n: int) -> ToeplitzMatrix:
    return ToeplitzMatrix(n, np.array([a[d] for d in range(-n, n + 1)]))


def _dealias_grid(size: int) -> Grid:
    n = 8
    while n < size:
        n *= 2
    return Grid(n)


def apply_toeplitz(a: Symbol, f: CoeffVector, grid: Grid | None = None) -> CoeffVector:
    """``P(a f)`` for an analytic polynomial ``f``.

    Without ``grid`` the product is formed on the smallest power-of-two grid
    with at least ``2(deg a + deg f) + 2`` nodes.
    """
    if not f.is_analytic():
        raise ConfigurationError("Toeplitz operators act on analytic polynomials")
    width = a.half_width + f.half_width
    if grid is None:
        grid = _dealias_grid(2 * width + 2)
    elif 2 * width + 2 > grid.n_points:
        raise DegreeBudgetError(
            f"deg a + deg f = {width} needs at least {2 * width + 2} nodes, "
            f"grid has {grid.n_points}")
    product = synthesize(a, grid) * synthesize(f, grid)
    return riesz_project(analyze(product, width))


def brown_halmos_entry(a: Symbol, j: int, k: int, grid: Grid) -> complex:
    """``⟨T_a χ_j, χ_k⟩`` computed through the grid."""
    if j < 0 or k < 0:
        raise ConfigurationError("Brown-Halmos indices are nonnegative")
    if 2 * k + 1 > grid.n_points:
        raise DegreeBudgetError(f"χ_{k} does not fit a {grid.n_points}-point grid")
    image = apply_toeplitz(a, character(j), grid)
    return pairing(synthesize(image, grid), grid.character(k))


def matrix_to_symbol(mat, tol: float = 1e-9):
    """Recover the symbol of a Toeplitz matrix, or report the worst diagonal.

    Returns a ``CoeffVector`` with ``â(d)`` equal to the mean of diagonal
    ``d = k - j`` when every diagonal is constant to within ``tol``, else a
    ``StructureViolation``.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ConfigurationError("matrix must be square")
    n = mat.shape[0] - 1
    coeffs = np.zeros(2 * n + 1, dtype=complex)
    worst = StructureViolation(0, 0.0)
    for d in range(-n, n + 1):
        # entry(k, j) with k - j = d lies on numpy's diagonal offset -d
        diag = np.diagonal(mat, offset=-d)
        mean = diag[0] if np.all(diag == diag[0]) else diag.mean()
        dev = float(np.max(np.abs(diag - mean)))
        if dev > worst.deviation:
            worst = StructureViolation(d, dev)
        coeffs[d + n] = mean
    if worst.deviation > tol:
        return worst
    return CoeffVector(n, coeffs)


def l2_operator_norm(a: Symbol, n: int, tol: float = 1e-10, max_iter: int = 100_000,
                     seed: int = 0) -> float:
    """Largest singular value of the ``(n+1) x (n+1)`` finite section.

    Power iteration on ``T^H T``; stops when successive estimates agree to
    relative ``tol``.
    """
    mat = toeplitz_matrix(a, n)
    adj = mat.adjoint()
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    x /= np.linalg.norm(x)
    sigma = 0.0
    for _ in range(max_iter):
        y = mat.matvec(x)
        new_sigma = float(np.linalg.norm(y))
        if new_sigma == 0.0:
            return 0.0
        z = adj.matvec(y)
        x = z / np.linalg.norm(z)
        if abs(new_sigma - sigma) <= tol * new_sigma:
            return new_sigma
        sigma = new_sigma
    return sigma


def _norm_grid(specs, grid: Grid | None, width: int) -> Grid:
    for spec in specs:
        own = spec_grid(spec)
        if own is not None:
            if grid is not None and grid.n_points != own.n_points:
                raise ConfigurationError("space specs live on different grids")
            grid = own
    if grid is None:
        grid = _dealias_grid(max(64, 4 * width + 4))
    if 2 * width + 1 > grid.n_points:
        raise DegreeBudgetError(
            f"degree {width} does not fit the {grid.n_points}-point norm grid")
    return grid


def operator_norm_lower(a: Symbol, X: SpaceSpec, Y: SpaceSpec, degree: int,
                        budget: int, seed: int, grid: Grid | None = None,
                        workers: int = 1) -> NormBound:
    """Lower bound for ``‖T_a‖`` from ``H[X]`` to ``H[Y]``.

    Maximizes ``‖T_a f‖_Y / ‖f‖_X`` over analytic polynomials ``f`` of degree
    at most ``degree``. Norms are evaluated on the grid carried by the specs,
    or on ``grid``, or on a default grid four times the output degree.
    """
    width = a.half_width + degree
    grid = _norm_grid((X, Y), grid, width)
    cols = np.arange(degree + 1)
    domain = np.exp(1j * np.outer(grid.nodes, cols))
    out_idx = np.arange(width + 1)
    # column j of the (infinite) Toeplitz matrix restricted to rows 0..width
    coeff_block = np.array([[a[k - j] for j in cols] for k in out_idx])
    image = np.exp(1j * np.outer(grid.nodes, out_idx)) @ coeff_block

    def objective(x):
        den = space_norm(GridFunction(grid, domain @ x), X)
        if den == 0:
            return 0.0
        return space_norm(GridFunction(grid, image @ x), Y) / den

    starts = [np.eye(degree + 1)[0]]
    samples = synthesize(a, _dealias_grid(max(64, 4 * a.half_width + 4)))
    peak = samples.grid.nodes[int(np.argmax(np.abs(samples.samples)))]
    starts.append(np.exp(-1j * peak * cols))
    result = maximize(objective, degree + 1, budget=budget, seed=seed, starts=starts,
                      workers=workers)
    return NormBound(result.value, CoeffVector.from_dict(
        {int(j): c for j, c in zip(cols, result.argmax)}, degree))
