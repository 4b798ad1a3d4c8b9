import numpy as np
import pytest

from mnconvex import _kernels_py
from mnconvex.sampling import IntervalSpec, grid, random_pairs, sample_pairs, structured_pairs, uniforms


def test_interval_validation():
    for bad in [(0.0, 1.0), (2.0, 1.0), (1.0, np.inf), (-1.0, 1.0)]:
        with pytest.raises(ValueError):
            IntervalSpec(*bad)
    with pytest.raises(ValueError):
        IntervalSpec(1, 2, samples=1)
    with pytest.raises(ValueError):
        IntervalSpec(1, 2, sampling="gauss")
    assert IntervalSpec(1, 2, seed=-1).seed == 2**64 - 1


def test_counter_based_stream():
    full = uniforms(42, 0, 100)
    assert np.array_equal(uniforms(42, 37, 10), full[37:47])
    assert not np.array_equal(uniforms(43, 0, 100), full)
    assert np.all((full >= 0) & (full < 1))


def test_pairs_are_regenerable_by_index():
    iv = IntervalSpec(0.5, 8.0, samples=50, seed=9)
    xs, ys = random_pairs(iv)
    u = uniforms(9, 2 * 17, 2)
    lo, hi = np.log(0.5), np.log(8.0)
    assert xs[17] == pytest.approx(np.exp(lo + u[0] * (hi - lo)), rel=1e-15)
    assert ys[17] == pytest.approx(np.exp(lo + u[1] * (hi - lo)), rel=1e-15)


def test_pairs_stay_in_interval():
    for sampling in ("log-uniform", "uniform"):
        iv = IntervalSpec(1e-6, 1e6, samples=5000, sampling=sampling, seed=3)
        xs, ys = sample_pairs(iv)
        assert xs.min() >= iv.lo and ys.max() <= iv.hi


def test_structured_pairs():
    iv = IntervalSpec(1.0, 100.0)
    xs, ys = structured_pairs(iv)
    ratios = ys[:-1] / xs[:-1] - 1
    assert set(np.round(np.log10(ratios)).astype(int)) == set(range(-8, -1))
    assert (xs[-1], ys[-1]) == (1.01, 99.0)


def test_grid_monotone():
    g = grid(IntervalSpec(0.1, 10, samples=11))
    assert np.all(np.diff(g) > 0) and g[0] == 0.1 and g[-1] == pytest.approx(10)


def test_backends_agree():
    from mnconvex._backend import kernels

    a = np.empty(1000)
    b = np.empty(1000)
    kernels.uniforms(2**63 + 5, 11, a)
    _kernels_py.uniforms(2**63 + 5, 11, b)
    assert np.array_equal(a, b)
