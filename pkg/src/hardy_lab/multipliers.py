"""Pointwise multipliers between function spaces.

``M(X, Y)`` is normed by the operator norm of ``g ↦ a g`` from ``X`` to
``Y``. Only lower bounds are computed numerically. For variable Lebesgue
spaces the Hölder exponent ``1/q = 1/p + 1/r`` identifies ``M`` with
``L^{r(·)}`` up to constants, which ``verify_multiplier_identity`` measures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hardy_lab.errors import GridMismatchError
from hardy_lab.fourier import CoeffVector, analyze
from hardy_lab.grid import GridFunction, same_grid
from hardy_lab.optimize import maximize
from hardy_lab.spaces import (
    INF,
    ExponentFunction,
    Lebesgue,
    SpaceSpec,
    VariableLebesgue,
    luxemburg_norm,
    space_norm,
    spec_grid,
)
from hardy_lab.toeplitz import NormBound

HOLDER_CONSTANT = 2.0


@dataclass(frozen=True)
class TrivialMultipliers:
    """Signal that ``q > p`` somewhere, where ``M(L^p, L^q)`` collapses to ``{0}``.

    On a finite grid the collapse cannot be observed, so this is advisory.
    """

    fraction: float


@dataclass(frozen=True)
class MultiplierReport:
    lower: float
    upper: float
    ratio: float
    r_norm: float

    @property
    def holds(self) -> bool:
        return self.lower <= self.upper


def holder_exponent(p: ExponentFunction, q: ExponentFunction):
    """``r`` with ``1/q = 1/p + 1/r`` pointwise, or ``TrivialMultipliers``."""
    same_grid(p, q)
    inv = 1.0 / q.samples - 1.0 / p.samples
    bad = inv < -1e-15
    if np.any(bad):
        return TrivialMultipliers(float(np.mean(bad)))
    inv = np.where(np.abs(inv) <= 1e-15, 0.0, inv)
    with np.errstate(divide="ignore"):
        r = np.where(inv == 0.0, INF, 1.0 / np.where(inv == 0.0, 1.0, inv))
    return ExponentFunction(p.grid, r)


def _pointwise_exponent(X: SpaceSpec, Y: SpaceSpec, grid):
    """``r/p`` where both spaces are Lebesgue-type, else ``None``."""
    def expo(spec):
        if isinstance(spec, Lebesgue):
            return ExponentFunction.constant(grid, spec.p)
        if isinstance(spec, VariableLebesgue):
            return spec.p
        return None

    p, q = expo(X), expo(Y)
    if p is None or q is None:
        return None
    r = holder_exponent(p, q)
    if isinstance(r, TrivialMultipliers):
        return None
    s = r.samples / p.samples
    return np.where(np.isfinite(s), np.minimum(s, 8.0), 8.0)


def multiplier_norm_lower(a: GridFunction, X: SpaceSpec, Y: SpaceSpec, degree: int,
                          budget: int, seed: int, workers: int = 1) -> NormBound:
    """Lower bound for ``‖a‖_{M(X,Y)}`` over trigonometric polynomials ``g``
    of degree at most ``degree``; the certificate is the best ``g`` found."""
    grid = a.grid
    for spec in (X, Y):
        own = spec_grid(spec)
        if own is not None and own.n_points != grid.n_points:
            raise GridMismatchError("space spec and multiplier live on different grids")
    indices = np.arange(-degree, degree + 1)
    zero = CoeffVector.zeros(degree)
    scale = a.sup()
    if scale == 0:
        return NormBound(0.0, zero)
    unit = a.samples / scale
    basis = np.exp(1j * np.outer(grid.nodes, indices))

    def objective(x):
        g = basis @ x
        den = space_norm(GridFunction(grid, g), X)
        if den == 0:
            return 0.0
        return space_norm(GridFunction(grid, unit * g), Y) / den

    mags = np.abs(unit)
    powers = [mags ** s for s in (1.0, 2.0, 4.0)]
    pointwise = _pointwise_exponent(X, Y, grid)
    if pointwise is not None:
        powers.insert(0, mags ** pointwise)
    starts = [analyze(GridFunction(grid, v), degree).coeffs for v in powers]
    peak = grid.nodes[int(np.argmax(mags))]
    fejer = (1.0 - np.abs(indices) / (degree + 1)) * np.exp(-1j * indices * peak)
    starts += [fejer, zero.coeffs + (indices == 0)]

    result = maximize(objective, indices.size, budget=budget, seed=seed, starts=starts,
                      workers=workers)
    return NormBound(result.value * scale, CoeffVector(degree, result.argmax))


def verify_multiplier_identity(a: GridFunction, p: ExponentFunction, q: ExponentFunction,
                               degree: int, budget: int, seed: int, workers: int = 1):
    """Compare the multiplier lower bound with ``‖a‖_{L^{r(·)}}``.

    Returns a ``MultiplierReport``; ``TrivialMultipliers`` is passed through
    unchanged when ``q > p`` somewhere.
    """
    r = holder_exponent(p, q)
    if isinstance(r, TrivialMultipliers):
        return r
    r_norm = luxemburg_norm(a, r)
    if r_norm == 0:
        return MultiplierReport(0.0, 0.0, 0.0, 0.0)
    lower = multiplier_norm_lower(a, VariableLebesgue(p), VariableLebesgue(q), degree,
                                  budget, seed, workers).value
    return MultiplierReport(lower, HOLDER_CONSTANT * r_norm, lower / r_norm, r_norm)
