"""Independent check of the Lebesgue duality lower bound by convex programming.

For a fixed ``f`` the best ratio ``|⟨f, q⟩| / ‖q‖_{p'}`` over polynomials ``q``
of degree <= M equals ``1 / min{‖q‖_{p'} : Re⟨f, q⟩ = 1}``, a convex problem.
Prints, per case, the convex optimum, the coordinate-ascent value and
``space_norm``. For ``p = 2`` all three agree; for ``p = 4`` the convex
optimum itself sits visibly below ``‖f‖_4`` when ``f`` has full degree M.

Needs cvxpy (``pip install cvxpy``).
"""

import argparse

import cvxpy as cp
import numpy as np

from hardy_lab.fourier import CoeffVector, synthesize
from hardy_lab.grid import Grid
from hardy_lab.spaces import Lebesgue, conjugate_exponent, norm_by_duality, space_norm


def convex_sup(f, p, degree):
    grid = f.grid
    idx = np.arange(-degree, degree + 1)
    basis = np.exp(1j * np.outer(grid.nodes, idx))
    x = cp.Variable(idx.size, complex=True)
    q = basis @ x
    pc = conjugate_exponent(p)
    n = grid.n_points
    objective = cp.pnorm(cp.abs(q), pc) * n ** (-1.0 / pc)
    pairing = cp.real(cp.sum(cp.multiply(np.conj(f.samples), q))) / n
    prob = cp.Problem(cp.Minimize(objective), [pairing == 1])
    prob.solve(solver=cp.CLARABEL)
    return 1.0 / prob.value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=float, default=4.0)
    ap.add_argument("--degree", type=int, default=16)
    ap.add_argument("--cases", type=int, default=20)
    ap.add_argument("--budget", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()

    grid = Grid(256)
    rng = np.random.default_rng([args.seed, 6, int(args.p)])
    print(f"{'case':>4} {'deg f':>5} {'convex/norm':>12} {'ascent/norm':>12} {'ascent/convex':>14}")
    for i in range(args.cases):
        deg = int(rng.integers(0, args.degree + 1))
        size = 2 * deg + 1
        f = synthesize(CoeffVector(deg, rng.standard_normal(size)
                                   + 1j * rng.standard_normal(size)), grid)
        norm = space_norm(f, Lebesgue(args.p))
        best = convex_sup(f, args.p, args.degree)
        ours = norm_by_duality(f, Lebesgue(args.p), args.degree, args.budget,
                               seed=args.seed + i)
        print(f"{i:4d} {deg:5d} {best / norm:12.6f} {ours / norm:12.6f} {ours / best:14.6f}")


if __name__ == "__main__":
    main()
