"""Norms of the Banach function spaces used on the circle.

Three families are supported: constant-exponent Lebesgue spaces, variable
Lebesgue spaces with the Luxemburg-Nakano norm, and weighted Lorentz spaces
``L^{p,q}(w)`` normed through ``f**``. Everything is discrete: a function is
known only at the grid nodes and each node carries mass ``1/N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate as sp_integrate
from scipy.special import comb

from hardy_lab.errors import ConfigurationError
from hardy_lab.fourier import analyze
from hardy_lab.grid import Grid, GridFunction, same_grid
from hardy_lab.optimize import maximize

INF = math.inf


def conjugate_exponent(p):
    """``p' = p/(p-1)`` with ``1' = ∞`` and ``∞' = 1``; works on arrays."""
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(np.isinf(p), 1.0, np.where(p == 1.0, INF, p / (p - 1.0)))
    return out if out.ndim else float(out)


@dataclass(frozen=True, eq=False)
class ExponentFunction:
    """Exponent ``p(t) ∈ [1, ∞]`` sampled on a grid."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"expected {self.grid.n_points} exponent samples, got {samples.shape}")
        if np.any(np.isnan(samples)) or np.any(samples < 1.0):
            raise ConfigurationError("exponent samples must lie in [1, ∞]")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "ExponentFunction":
        return cls(grid, np.full(grid.n_points, float(value)))

    @property
    def infinite_mask(self) -> np.ndarray:
        return np.isinf(self.samples)

    @property
    def p_minus(self) -> float:
        return float(np.min(self.samples))

    @property
    def p_plus(self) -> float:
        """Largest finite sample (``∞`` only if every sample is infinite)."""
        finite = self.samples[~self.infinite_mask]
        return float(np.max(finite)) if finite.size else INF

    def is_constant(self) -> bool:
        return bool(np.all(self.samples == self.samples[0]))

    def conjugate(self) -> "ExponentFunction":
        return ExponentFunction(self.grid, conjugate_exponent(self.samples))


@dataclass(frozen=True, eq=False)
class Weight:
    """Strictly positive finite weight sampled on a grid."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"expected {self.grid.n_points} weight samples, got {samples.shape}")
        if not np.all(np.isfinite(samples)) or np.any(samples <= 0):
            raise ConfigurationError("weight samples must be positive and finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @classmethod
    def constant(cls, grid: Grid, value: float = 1.0) -> "Weight":
        return cls(grid, np.full(grid.n_points, float(value)))

    def reciprocal(self) -> "Weight":
        return Weight(self.grid, 1.0 / self.samples)


def _check_open_exponent(p, name="p"):
    if not 1.0 < p < INF:
        raise ConfigurationError(f"{name} must lie in (1, ∞), got {p}")


@dataclass(frozen=True)
class Lebesgue:
    p: float

    def __post_init__(self):
        _check_open_exponent(self.p)


@dataclass(frozen=True, eq=False)
class VariableLebesgue:
    """``L^{p(·)}``; ``equivalent_only`` marks an associate space known up to constants."""

    p: ExponentFunction
    equivalent_only: bool = False


@dataclass(frozen=True, eq=False)
class WeightedLorentz:
    p: float
    q: float
    w: Weight

    def __post_init__(self):
        _check_open_exponent(self.p)
        if not 1.0 <= self.q <= INF:
            raise ConfigurationError(f"q must lie in [1, ∞], got {self.q}")


SpaceSpec = Union[Lebesgue, VariableLebesgue, WeightedLorentz]


def spec_grid(spec: SpaceSpec) -> Grid | None:
    """Grid carried by the parameters of ``spec`` (``None`` for constant exponents)."""
    if isinstance(spec, VariableLebesgue):
        return spec.p.grid
    if isinstance(spec, WeightedLorentz):
        return spec.w.grid
    return None


@dataclass(frozen=True, eq=False)
class RearrangementProfile:
    """Right-continuous step function ``f*`` on ``[0, 1]``.

    ``values[i]`` holds on ``[breakpoints[i], breakpoints[i+1])``.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if b.size != v.size + 1 or b[0] != 0.0 or b[-1] != 1.0:
            raise ConfigurationError("breakpoints must run from 0 to 1, one more than values")
        if np.any(np.diff(b) <= 0):
            raise ConfigurationError("breakpoints must be strictly increasing")
        if np.any(np.diff(v) > 0) or np.any(v < 0):
            raise ConfigurationError("values must be nonnegative and non-increasing")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    def __call__(self, x):
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return self.values[np.clip(idx, 0, self.values.size - 1)]

    @property
    def cumulative(self) -> np.ndarray:
        """``∫_0^{b_i} f*`` at every breakpoint."""
        return np.concatenate([[0.0], np.cumsum(self.values * np.diff(self.breakpoints))])


def distribution_function(f: GridFunction, lam: float) -> float:
    if lam < 0:
        raise ConfigurationError("λ must be nonnegative")
    return float(np.mean(np.abs(f.samples) > lam))


def rearrangement(f: GridFunction) -> RearrangementProfile:
    n = f.grid.n_points
    mags = np.sort(np.abs(f.samples))[::-1]
    # merge runs of equal values into a single step
    starts = np.concatenate([[0], np.nonzero(np.diff(mags))[0] + 1])
    breakpoints = np.concatenate([starts, [n]]) / n
    breakpoints[-1] = 1.0
    return RearrangementProfile(breakpoints, mags[starts])


def lebesgue_norm(f: GridFunction, p: float) -> float:
    mags = np.abs(f.samples)
    if p == INF:
        return float(np.max(mags))
    if p < 1:
        raise ConfigurationError(f"p must be at least 1, got {p}")
    scale = np.max(mags)
    if scale == 0:
        return 0.0
    return float(scale * np.mean((mags / scale) ** p) ** (1.0 / p))


def _modular(mags: np.ndarray, p: ExponentFunction) -> float:
    inf_mask = p.infinite_mask
    with np.errstate(over="ignore"):
        finite_part = np.sum(mags[~inf_mask] ** p.samples[~inf_mask]) / mags.size
    sup_part = float(np.max(mags[inf_mask])) if np.any(inf_mask) else 0.0
    return float(finite_part + sup_part)


def modular(f: GridFunction, p: ExponentFunction) -> float:
    """``∫_{p<∞} |f|^{p(t)} dm + max_{p=∞} |f|``."""
    same_grid(f, p)
    return _modular(np.abs(f.samples), p)


def luxemburg_norm(f: GridFunction, p: ExponentFunction, rtol: float = 1e-12,
                   max_iter: int = 200) -> float:
    """``inf{λ > 0 : ϱ(f/λ) <= 1}`` by geometric bisection.

    The returned ``λ`` is the upper end of the final bracket, so
    ``modular(f/λ) <= 1`` always holds.
    """
    same_grid(f, p)
    mags = np.abs(f.samples)
    scale = float(np.max(mags))
    if scale == 0:
        return 0.0
    mags = mags / scale
    l1 = float(np.mean(mags))
    lo = l1 / (1.0 + l1)
    hi = max(float(np.max(mags)), l1) + 1.0

    def rho(lam):
        return _modular(mags / lam, p)

    while rho(lo) <= 1.0:
        lo /= 2.0
    while rho(hi) > 1.0:
        hi *= 2.0
    for _ in range(max_iter):
        if hi / lo - 1.0 <= rtol:
            break
        mid = math.sqrt(lo * hi)
        if rho(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return scale * hi


def double_star(profile: RearrangementProfile, x: float) -> float:
    """``f**(x) = (1/x) ∫_0^x f*``."""
    if not 0.0 < x <= 1.0:
        raise ConfigurationError(f"x must lie in (0, 1], got {x}")
    b = profile.breakpoints
    i = min(int(np.searchsorted(b, x, side="right")) - 1, profile.values.size - 1)
    return float((profile.cumulative[i] + profile.values[i] * (x - b[i])) / x)


def _pieces(profile: RearrangementProfile):
    """On piece ``i`` the running mean is ``f**(x) = c + d/x``."""
    a = profile.breakpoints[:-1]
    b = profile.breakpoints[1:]
    c = profile.values
    d = np.maximum(profile.cumulative[:-1] - c * a, 0.0)
    return a, b, c, d


def _power_integral(e, ratio):
    """``(1 - ratio^e)/e``, the integral of ``x^{e-1}`` over ``[ratio, 1]``."""
    log_r = np.log(ratio)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = -np.expm1(e * log_r) / e
    return np.where(e == 0, -log_r, out)


def _lorentz_integral(profile: RearrangementProfile, p: float, q: float) -> float:
    """``∫_0^1 x^{q/p - 1} (f**(x))^q dx``."""
    a, b, c, d = _pieces(profile)
    s = q / p
    # first piece starts at 0 where f** = f*(0) is constant
    total = c[0] ** q * b[0] ** s / s
    a, b, c, d = a[1:], b[1:], c[1:], d[1:]
    if a.size == 0:
        return float(total)
    if float(q).is_integer():
        k_max = int(q)
        ratio = a / b
        for k in range(k_max + 1):
            e = s - k
            # d^k ∫_a^b x^{e-1} dx written as b^s (d/b)^k (1 - (a/b)^e)/e
            term = comb(k_max, k) * c ** (k_max - k) * b ** s * (d / b) ** k
            total += float(np.sum(term * _power_integral(e, ratio)))
        return float(total)
    for ai, bi, ci, di in zip(a, b, c, d):
        val, _ = sp_integrate.quad(lambda x: x ** (s - 1) * (ci + di / x) ** q, ai, bi,
                                   epsabs=1e-13, epsrel=1e-12, limit=200)
        total += val
    return float(total)


def _lorentz_sup(profile: RearrangementProfile, p: float) -> float:
    """``sup_{0<x<=1} x^{1/p} f**(x)``."""
    a, b, c, d = _pieces(profile)
    inv = 1.0 / p

    def h(x, ci, di):
        return ci * x ** inv + di * x ** (inv - 1.0)

    best = float(np.max(h(b, c, d)))
    inner = a > 0
    if np.any(inner):
        best = max(best, float(np.max(h(a[inner], c[inner], d[inner]))))
    with np.errstate(divide="ignore", invalid="ignore"):
        crit = d * (p - 1.0) / c
    ok = (c > 0) & (crit > a) & (crit < b)
    if np.any(ok):
        best = max(best, float(np.max(h(crit[ok], c[ok], d[ok]))))
    return best


def lorentz_norm(f: GridFunction, p: float, q: float) -> float:
    _check_open_exponent(p)
    if not 1.0 <= q <= INF:
        raise ConfigurationError(f"q must lie in [1, ∞], got {q}")
    scale = f.sup()
    if scale == 0:
        return 0.0
    # homogeneity: work with sup |f| = 1 so tiny or huge inputs stay representable
    profile = rearrangement(GridFunction(f.grid, f.samples / scale))
    if q == INF:
        return scale * _lorentz_sup(profile, p)
    return scale * _lorentz_integral(profile, p, q) ** (1.0 / q)


def weighted_lorentz_norm(f: GridFunction, p: float, q: float, w: Weight) -> float:
    same_grid(f, w)
    return lorentz_norm(GridFunction(f.grid, f.samples * w.samples), p, q)


def space_norm(f: GridFunction, spec: SpaceSpec) -> float:
    if isinstance(spec, Lebesgue):
        return lebesgue_norm(f, spec.p)
    if isinstance(spec, VariableLebesgue):
        return luxemburg_norm(f, spec.p)
    if isinstance(spec, WeightedLorentz):
        return weighted_lorentz_norm(f, spec.p, spec.q, spec.w)
    raise TypeError(f"unknown space {spec!r}")


def associate_spec(spec: SpaceSpec) -> SpaceSpec:
    if isinstance(spec, Lebesgue):
        return Lebesgue(conjugate_exponent(spec.p))
    if isinstance(spec, VariableLebesgue):
        return VariableLebesgue(spec.p.conjugate(), equivalent_only=True)
    if isinstance(spec, WeightedLorentz):
        return WeightedLorentz(conjugate_exponent(spec.p), conjugate_exponent(spec.q),
                               spec.w.reciprocal())
    raise TypeError(f"unknown space {spec!r}")


def ap_characteristic(w: Weight, p: float, max_exact_points: int = 4096,
                      n_samples: int = 10 ** 6, seed: int = 0) -> float:
    """Muckenhoupt ``A_p`` characteristic over arcs with node endpoints.

    Up to ``max_exact_points`` nodes every arc (start node, length in nodes)
    is examined. Larger grids use all arcs of dyadic length plus
    ``n_samples`` random arcs drawn from ``seed``.
    """
    _check_open_exponent(p)
    pc = conjugate_exponent(p)
    n = w.grid.n_points
    up = w.samples ** p
    down = w.samples ** (-pc)
    cum_up = np.concatenate([[0.0], np.cumsum(np.concatenate([up, up]))])
    cum_down = np.concatenate([[0.0], np.cumsum(np.concatenate([down, down]))])

    def value(starts, lengths):
        avg_up = (cum_up[starts + lengths] - cum_up[starts]) / lengths
        avg_down = (cum_down[starts + lengths] - cum_down[starts]) / lengths
        return avg_up ** (1.0 / p) * avg_down ** (1.0 / pc)

    starts = np.arange(n)
    best = 0.0
    if n <= max_exact_points:
        lengths = range(1, n + 1)
    else:
        lengths = [2 ** j for j in range(int(math.log2(n)) + 1)]
    for length in lengths:
        best = max(best, float(np.max(value(starts, np.full(n, length)))))
    if n > max_exact_points:
        rng = np.random.default_rng(seed)
        s = rng.integers(0, n, n_samples)
        ln = rng.integers(1, n + 1, n_samples)
        best = max(best, float(np.max(value(s, ln))))
    return best


def log_holder_constant(p: ExponentFunction) -> float:
    """Smallest ``C`` with ``|p(t) - p(τ)| <= C / (-log|t - τ|)`` over node pairs
    at chordal distance below 1/2."""
    if np.any(p.infinite_mask):
        raise ConfigurationError("log-Hölder constant needs a bounded exponent")
    n = p.grid.n_points
    best = 0.0
    for offset in range(1, n // 2 + 1):
        chord = 2.0 * math.sin(math.pi * offset / n)
        if chord >= 0.5:
            break
        jump = float(np.max(np.abs(p.samples - np.roll(p.samples, offset))))
        best = max(best, jump * -math.log(chord))
    return best


def _char_matrix(grid: Grid, indices: np.ndarray) -> np.ndarray:
    return np.exp(1j * np.outer(grid.nodes, indices))


def _dual_guess(f: GridFunction, spec: SpaceSpec) -> np.ndarray:
    """Samples of the pointwise Hölder extremal for ``f`` in ``spec``."""
    mags = np.abs(f.samples)
    phase = np.exp(1j * np.angle(f.samples))
    if isinstance(spec, Lebesgue):
        return mags ** (spec.p - 1.0) * phase
    if isinstance(spec, VariableLebesgue):
        expo = np.minimum(spec.p.samples, 64.0)
        return mags ** (expo - 1.0) * phase
    return f.samples * spec.w.samples ** 2


def norm_by_duality(f: GridFunction, spec: SpaceSpec, degree: int, budget: int,
                    seed: int, workers: int = 1) -> float:
    """Lower bound for ``‖f‖_X`` as ``sup |⟨f, q⟩| / ‖q‖_{X'}`` over
    trigonometric polynomials ``q`` of degree at most ``degree``.

    For Lebesgue and weighted Lorentz spaces Hölder's inequality keeps the
    result below ``space_norm(f, spec)``. For variable exponents the
    associate norm is only equivalent, and the bound may exceed the norm by
    a factor up to 2.
    """
    grid = f.grid
    dual = associate_spec(spec)
    indices = np.arange(-degree, degree + 1)
    basis = _char_matrix(grid, indices)
    fs = f.samples

    def objective(x):
        q = basis @ x
        denom = space_norm(GridFunction(grid, q), dual)
        if denom == 0:
            return 0.0
        return abs(np.mean(fs * np.conj(q))) / denom

    guess = GridFunction(grid, _dual_guess(f, spec))
    starts = [analyze(f, degree).coeffs, analyze(guess, degree).coeffs]
    return maximize(objective, indices.size, budget=budget, seed=seed, starts=starts,
                    workers=workers).value
