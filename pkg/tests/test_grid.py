import numpy as np
import pytest
from hypothesis import given, strategies as st

from hardy_lab.errors import ConfigurationError, GridMismatchError
from hardy_lab.grid import Grid, integrate, pairing, pointwise_multiply, same_grid


@pytest.mark.parametrize("n", [0, 4, 7, 12, 100, -8])
def test_rejects_bad_sizes(n):
    with pytest.raises(ConfigurationError):
        Grid(n)


def test_rejects_non_integer():
    with pytest.raises(ConfigurationError):
        Grid(8.0)
    with pytest.raises(ConfigurationError):
        Grid(True)


@pytest.mark.parametrize("n", [8, 64, 4096])
def test_nodes_uniform(n):
    g = Grid(n)
    assert g.nodes[0] == 0.0
    assert np.allclose(np.diff(g.nodes), 2 * np.pi / n)
    assert np.allclose(np.abs(g.points), 1.0)


def test_mean_of_characters():
    g = Grid(32)
    assert integrate(g.constant()) == 1.0
    for n in range(1, 32):
        assert abs(integrate(g.character(n))) < 1e-14


def test_pairing_orthonormal():
    g = Grid(16)
    for j in range(-7, 8):
        for k in range(-7, 8):
            assert abs(pairing(g.character(j), g.character(k)) - (j == k)) < 1e-14


def test_pairing_conjugate_linear():
    g = Grid(16)
    f, h = g.character(2), g.character(2)
    assert abs(pairing(f, h * 1j) - (-1j)) < 1e-14


def test_half_open_arc_endpoints():
    g = Grid(8)
    mask = g.arc_mask(0.0, np.pi)
    assert mask.tolist() == [True] * 4 + [False] * 4
    # angles on [-π, π] are reduced mod 2π
    assert g.arc_mask(-np.pi, 0.0).tolist() == [False] * 4 + [True] * 4
    assert g.arc_mask(0.0, 2 * np.pi).all()
    assert not g.arc_mask(1.0, 1.0).any()


def test_indicator_midpoint_values():
    g = Grid(8)
    f = g.indicator(-np.pi, 0.0, midpoint=True)
    assert f.real.tolist() == [0.5, 0, 0, 0, 0.5, 1, 1, 1]
    # endpoints between nodes leave the plain indicator alone
    assert np.array_equal(g.indicator(0.1, 2.0, midpoint=True).real, g.indicator(0.1, 2.0).real)


@given(st.floats(-10, 10), st.floats(0, 2 * np.pi))
def test_arc_measure_within_one_node(start, length):
    g = Grid(64)
    frac = g.arc_mask(start, start + length).mean()
    assert abs(frac - length / (2 * np.pi)) <= 1 / 64 + 1e-12


def test_samples_read_only_and_finite():
    g = Grid(8)
    f = g.constant(2.0)
    with pytest.raises(ValueError):
        f.samples[0] = 1.0
    with pytest.raises(ConfigurationError):
        g.function(np.full(8, np.nan))
    with pytest.raises(ConfigurationError):
        g.function(np.ones(7))


def test_grid_mismatch():
    a, b = Grid(8).constant(), Grid(16).constant()
    with pytest.raises(GridMismatchError):
        a + b
    with pytest.raises(GridMismatchError):
        pointwise_multiply(a, b)
    with pytest.raises(GridMismatchError):
        same_grid(a, b)


def test_arithmetic():
    g = Grid(8)
    f = g.character(1)
    assert np.allclose((f * f.conj()).samples, 1.0)
    assert np.allclose((2 - f + f).samples, 2.0)
    assert np.allclose((f / f).samples, 1.0)
    assert abs(f).sup() == pytest.approx(1.0)


def test_small_grid_nodes():
    assert np.allclose(Grid(8).nodes, np.pi / 4 * np.arange(8))
    assert Grid(1024).n_points == 1024


def test_aliasing_of_full_frequency():
    g = Grid(16)
    assert integrate(g.character(16)) == pytest.approx(1.0)


@given(st.integers(0, 2 ** 32 - 1))
def test_integrate_and_pairing_properties(seed):
    rng = np.random.default_rng(seed)
    g = Grid(32)
    f = g.function(rng.standard_normal(32) + 1j * rng.standard_normal(32))
    h = g.function(rng.standard_normal(32) + 1j * rng.standard_normal(32))
    assert integrate(f * 2 + h) == pytest.approx(2 * integrate(f) + integrate(h))
    assert abs(integrate(f)) <= f.sup() + 1e-12
    assert pairing(f, h) == pytest.approx(np.conj(pairing(h, f)))
