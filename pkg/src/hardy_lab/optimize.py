"""Derivative-free maximization of scale-invariant ratios.

Lower bounds for norms defined as suprema (duality formulas, multiplier and
Toeplitz operator norms) all reduce to maximizing a homogeneous ratio over
the coefficients of a polynomial. The norms involved are not smooth
everywhere, so the search is a compass/coordinate ascent with step halving
and Hooke-Jeeves pattern moves,
restarted from a few structured and seeded random starting points.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AscentResult:
    value: float
    argmax: np.ndarray
    evaluations: int


def _safe(objective, x):
    value = float(objective(x))
    return value if np.isfinite(value) else -np.inf


def coordinate_ascent(objective: Callable[[np.ndarray], float], start: np.ndarray,
                      max_evaluations: int, initial_step: float = 0.5,
                      min_step: float = 1e-8) -> AscentResult:
    """Maximize a degree-0 homogeneous ``objective`` of a complex vector.

    The real and imaginary parts of every entry are separate coordinates.
    The iterate is kept at unit Euclidean length, which is harmless because
    the objective is invariant under positive scaling. The trajectory does
    not depend on ``max_evaluations`` beyond where it is cut off.
    """
    x = np.asarray(start, dtype=complex).copy()
    norm = np.linalg.norm(x)
    if norm == 0:
        x[0] = 1.0
        norm = 1.0
    x /= norm
    best = _safe(objective, x)
    evals = 1
    step = initial_step
    units = [1.0, 1j]
    while step >= min_step and evals < max_evaluations:
        base = x.copy()
        improved = False
        for i in range(x.size):
            for unit in units:
                for sign in (1.0, -1.0):
                    if evals >= max_evaluations:
                        break
                    y = x.copy()
                    y[i] += sign * step * unit
                    value = _safe(objective, y)
                    evals += 1
                    if value > best:
                        x, best, improved = y, value, True
                        # keep walking while it pays
                        while evals < max_evaluations:
                            y = x.copy()
                            y[i] += sign * step * unit
                            value = _safe(objective, y)
                            evals += 1
                            if value <= best:
                                break
                            x, best = y, value
                        break
        if improved:
            # pattern move along the net displacement of the sweep
            direction = x - base
            while evals < max_evaluations:
                y = x + direction
                value = _safe(objective, y)
                evals += 1
                if value <= best:
                    break
                x, best = y, value
                direction = 2 * direction
            x /= np.linalg.norm(x)
        else:
            step /= 2
    return AscentResult(best, x, evals)


def maximize(objective: Callable[[np.ndarray], float], dim: int, *, budget: int,
             seed: int, starts: Sequence[np.ndarray] = (), n_random: int = 4,
             workers: int = 1) -> AscentResult:
    """Best of coordinate ascents from ``starts`` plus ``n_random`` seeded starts.

    ``budget`` counts objective evaluations and is split evenly between the
    starts, so the result is non-decreasing in ``budget``. Random starts come
    from independent substreams of ``seed``; the reduction keeps the first
    maximal start, so ``workers`` never changes the answer.
    """
    children = np.random.SeedSequence(seed).spawn(n_random)
    initial = [np.asarray(s, dtype=complex) for s in starts]
    for child in children:
        rng = np.random.default_rng(child)
        initial.append(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
    cap = max(1, budget // len(initial))

    def run(start):
        return coordinate_ascent(objective, start, cap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, initial))
    else:
        results = [run(s) for s in initial]

    best = results[0]
    for res in results[1:]:
        if res.value > best.value:
            best = res
    total = sum(r.evaluations for r in results)
    logger.debug("maximize: best %.12g after %d evaluations", best.value, total)
    return AscentResult(best.value, best.argmax, total)
