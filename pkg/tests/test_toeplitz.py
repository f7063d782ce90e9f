import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_coeffs
from hardy_lab.errors import ConfigurationError, DegreeBudgetError
from hardy_lab.fourier import CoeffVector, character, synthesize
from hardy_lab.grid import Grid
from hardy_lab.spaces import ExponentFunction, Lebesgue, VariableLebesgue
from hardy_lab.toeplitz import (
    StructureViolation,
    ToeplitzMatrix,
    apply_toeplitz,
    brown_halmos_entry,
    l2_operator_norm,
    matrix_to_symbol,
    operator_norm_lower,
    toeplitz_matrix,
)


def _dense(a, rows, cols):
    return np.array([[a[k - j] for j in range(cols)] for k in range(rows)])


def test_entries_convention(rng):
    a = random_coeffs(rng, 3)
    assert np.array_equal(toeplitz_matrix(a, 3).entries, _dense(a, 4, 4))


@given(st.integers(0, 40), st.integers(0, 2 ** 32 - 1))
def test_matvec_matches_dense(n, seed):
    rng = np.random.default_rng(seed)
    m = ToeplitzMatrix(n, rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1))
    x = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    assert np.allclose(m.matvec(x), m.entries @ x, atol=1e-10)
    assert np.allclose(m.adjoint().entries, m.entries.conj().T)


def test_apply_toeplitz_is_projected_product(rng):
    a = random_coeffs(rng, 5)
    f = random_coeffs(rng, 6, analytic=True)
    got = apply_toeplitz(a, f)
    expected = _dense(a, 12, 7) @ np.array([f[j] for j in range(7)])
    assert np.allclose([got[k] for k in range(12)], expected, atol=1e-12)
    assert got.is_analytic()


def test_apply_toeplitz_rejects():
    with pytest.raises(ConfigurationError):
        apply_toeplitz(character(1), character(-1))
    with pytest.raises(DegreeBudgetError):
        apply_toeplitz(CoeffVector.zeros(4), character(4), Grid(16))


def test_brown_halmos_matrix(rng):
    g = Grid(64)
    a = random_coeffs(rng, 8)
    mat = np.array([[brown_halmos_entry(a, j, k, g) for j in range(9)] for k in range(9)])
    assert np.max(np.abs(mat - _dense(a, 9, 9))) < 1e-12
    with pytest.raises(ConfigurationError):
        brown_halmos_entry(a, -1, 0, g)


def test_symbol_roundtrip_and_violation(rng):
    a = random_coeffs(rng, 6)
    back = matrix_to_symbol(toeplitz_matrix(a, 6).entries)
    assert np.array_equal(back.coeffs, a.coeffs)
    bad = toeplitz_matrix(a, 6).entries.copy()
    bad[4, 1] += 0.5
    violation = matrix_to_symbol(bad)
    assert isinstance(violation, StructureViolation)
    assert violation.diagonal == 3
    with pytest.raises(ConfigurationError):
        matrix_to_symbol(np.ones((2, 3)))


def test_power_iteration_matches_svd(rng):
    a = random_coeffs(rng, 4)
    for n in (5, 30, 100):
        exact = np.linalg.svd(toeplitz_matrix(a, n).entries, compute_uv=False)[0]
        assert l2_operator_norm(a, n) == pytest.approx(exact, rel=1e-8)


def test_tridiagonal_section_norm():
    a = CoeffVector.from_dict({1: 1.0, -1: 1.0})
    assert l2_operator_norm(a, 2) == pytest.approx(np.sqrt(2), rel=1e-10)
    # clustered singular values: the Rayleigh estimate stops slightly low
    value = l2_operator_norm(a, 62)
    assert value <= 2 * np.cos(np.pi / 64) * (1 + 1e-12)
    assert value == pytest.approx(2 * np.cos(np.pi / 64), rel=1e-7)
    assert l2_operator_norm(character(0), 17) == pytest.approx(1.0, abs=1e-12)


def test_section_norm_non_decreasing(rng):
    a = random_coeffs(rng, 3)
    values = [l2_operator_norm(a, n, tol=1e-13) for n in (4, 8, 16, 32)]
    assert all(x <= y * (1 + 1e-9) for x, y in zip(values, values[1:]))
    assert values[-1] <= synthesize(a, Grid(256)).sup() * (1 + 1e-9)


def test_operator_norm_lower_l2_matches_section_svd(rng):
    a = random_coeffs(rng, 2)
    degree = 6
    bound = operator_norm_lower(a, Lebesgue(2.0), Lebesgue(2.0), degree, budget=20000, seed=0)
    # rows 0..deg a + degree, columns 0..degree
    section = _dense(a, degree + 3, degree + 1)
    exact = np.linalg.svd(section, compute_uv=False)[0]
    assert bound.value <= exact * (1 + 1e-12)
    assert bound.value >= exact * (1 - 1e-6)
    assert bound.certificate.is_analytic()


def test_operator_norm_lower_variable_spaces(rng):
    g = Grid(64)
    p = ExponentFunction(g, np.where(g.arc_mask(0, np.pi), 2.0, 3.0))
    a = random_coeffs(rng, 2)
    bound = operator_norm_lower(a, VariableLebesgue(p), VariableLebesgue(p), 4, 2000, 1)
    sup = synthesize(a, Grid(256)).sup()
    assert 0 < bound.value <= 2 * sup


def test_matrix_examples():
    a = CoeffVector.from_dict({0: 1, 1: 2, -1: 3})
    assert np.array_equal(toeplitz_matrix(a, 1).entries, [[1, 3], [2, 1]])
    assert np.array_equal(toeplitz_matrix(character(0), 3).entries, np.eye(4))
    assert np.array_equal(toeplitz_matrix(character(1), 2).entries, np.eye(3, k=-1))


def test_apply_examples(rng):
    assert apply_toeplitz(character(1), character(0)).allclose(character(1), 1e-15)
    assert apply_toeplitz(character(-1), character(0)).allclose(CoeffVector.zeros(1), 1e-15)
    a = random_coeffs(rng, 3)
    n = 5
    f = random_coeffs(rng, n, analytic=True)
    img = apply_toeplitz(a, f)
    fx = np.array([f[j] for j in range(n + 1)])
    assert np.allclose([img[k] for k in range(n + 1)], toeplitz_matrix(a, n).entries @ fx,
                       atol=1e-13)


def test_brown_halmos_examples():
    g = Grid(32)
    a = CoeffVector.from_dict({2: 5.0, 0: 1.5, -1: 0.5})
    assert brown_halmos_entry(a, 0, 2, g) == pytest.approx(5.0, abs=1e-13)
    assert brown_halmos_entry(a, 3, 3, g) == pytest.approx(1.5, abs=1e-13)
    assert abs(brown_halmos_entry(a, 4, 1, g)) < 1e-13


def test_symbol_examples():
    s = matrix_to_symbol([[1, 3], [2, 1]])
    assert (s[0], s[1], s[-1]) == (1, 2, 3)
    v = matrix_to_symbol([[1, 0], [0, 2]], tol=1e-9)
    assert isinstance(v, StructureViolation) and v.diagonal == 0
    assert matrix_to_symbol(np.eye(3)).allclose(character(0), 0)


def test_linearity(rng):
    a, b = random_coeffs(rng, 3), random_coeffs(rng, 2)
    f = random_coeffs(rng, 5, analytic=True)
    alpha, beta = 2 - 1j, 0.5j
    lhs = apply_toeplitz(alpha * a + beta * b.resized(3), f)
    rhs = alpha * apply_toeplitz(a, f) + beta * apply_toeplitz(b.resized(3), f)
    assert lhs.allclose(rhs, 1e-12)


def test_operator_norm_lower_monotone(rng):
    a = random_coeffs(rng, 2)
    X = Lebesgue(3.0)
    vals = [operator_norm_lower(a, X, X, 4, b, 0, grid=Grid(64)).value for b in (100, 800, 4000)]
    assert vals == sorted(vals)
