import numpy as np
import pytest

from hardy_lab.optimize import coordinate_ascent, maximize


def _rayleigh(mat):
    def objective(x):
        return float(np.real(np.vdot(x, mat @ x)) / np.real(np.vdot(x, x)))
    return objective


@pytest.fixture
def hermitian():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    return a + a.conj().T


def test_finds_top_eigenvalue(hermitian):
    top = np.linalg.eigvalsh(hermitian)[-1]
    res = maximize(_rayleigh(hermitian), 6, budget=40000, seed=3)
    assert res.value <= top + 1e-12
    assert res.value == pytest.approx(top, rel=1e-6)


def test_monotone_in_budget(hermitian):
    values = [maximize(_rayleigh(hermitian), 6, budget=b, seed=1).value
              for b in (100, 1000, 10000)]
    assert values == sorted(values)


def test_workers_do_not_change_result(hermitian):
    one = maximize(_rayleigh(hermitian), 6, budget=3000, seed=9)
    four = maximize(_rayleigh(hermitian), 6, budget=3000, seed=9, workers=4)
    assert one.value == four.value
    assert np.array_equal(one.argmax, four.argmax)


def test_seed_determinism(hermitian):
    a = maximize(_rayleigh(hermitian), 6, budget=500, seed=5)
    b = maximize(_rayleigh(hermitian), 6, budget=500, seed=5)
    assert a.value == b.value


def test_respects_evaluation_cap(hermitian):
    res = coordinate_ascent(_rayleigh(hermitian), np.ones(6), max_evaluations=57)
    assert res.evaluations <= 57


def test_zero_start_and_nonfinite_objective():
    res = coordinate_ascent(lambda x: np.nan if abs(x[0]) < 0.5 else -abs(x[1]),
                            np.zeros(2), 200)
    assert np.isfinite(res.value)
