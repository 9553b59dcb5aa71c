import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicwalk import (
    EmptyWindowError,
    InsufficientDataError,
    InvalidSpecError,
    NoFrontError,
    cumulative_average,
    light_cone_front,
    log_growth_fit,
    poisson_reference,
    snapshot_times,
    spacing_ratios,
)


def test_spacing_worked_case():
    out = spacing_ratios([1.0, 3.0, 7.0])
    np.testing.assert_array_equal(out.spacings, [2.0, 4.0])
    np.testing.assert_array_equal(out.ratios, [0.5])
    assert out.mean_ratio == 0.5
    assert out.count == 1


def test_spacing_equal_grid():
    out = spacing_ratios(np.arange(50, dtype=float))
    assert np.all(out.ratios == 1.0)
    assert out.mean_ratio == 1.0


def test_spacing_merges_near_duplicates():
    vals = [0.0, 1.0, 1.0 + 1e-15, 3.0, 7.0]
    out = spacing_ratios(vals)
    assert out.values.shape[0] == 4  # the tie collapsed
    assert np.all(out.spacings > 0)


def test_spacing_insufficient_data():
    with pytest.raises(InsufficientDataError):
        spacing_ratios([1.0, 2.0])
    with pytest.raises(InsufficientDataError):
        spacing_ratios([5.0, 5.0 + 1e-14, 5.0 + 2e-14])


def test_spacing_poisson_oracle():
    rng = np.random.default_rng(42)
    out = spacing_ratios(rng.uniform(size=100_000))
    assert abs(out.mean_ratio - (2.0 * np.log(2.0) - 1.0)) < 0.01


def test_spacing_histogram_contract():
    rng = np.random.default_rng(3)
    out = spacing_ratios(rng.uniform(size=5000))
    widths = np.diff(out.bin_edges)
    assert abs(np.sum(out.densities * widths) - 1.0) < 1e-9
    assert out.mean_ratio == pytest.approx(float(np.mean(out.ratios)), abs=1e-12)
    assert np.all(out.ratios >= 0.0) and np.all(out.ratios <= 1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1),
       st.floats(0.1, 50.0),
       st.floats(-100.0, 100.0))
def test_spacing_affine_invariance(seed, scale, offset):
    vals = np.random.default_rng(seed).uniform(size=60)
    a = spacing_ratios(vals)
    b = spacing_ratios(scale * vals + offset)
    np.testing.assert_allclose(np.sort(a.ratios), np.sort(b.ratios), atol=1e-9)


def test_poisson_reference_values():
    assert poisson_reference(0.0) == 2.0
    assert poisson_reference(1.0) == 0.5
    with pytest.raises(InvalidSpecError):
        poisson_reference(1.5)
    r = np.linspace(0.0, 1.0, 20001)
    p = poisson_reference(r)
    assert abs(np.trapezoid(p, r) - 1.0) < 1e-8
    assert abs(np.trapezoid(r * p, r) - (2.0 * np.log(2.0) - 1.0)) < 1e-8


def test_snapshot_protocol():
    ts = snapshot_times(10, 1.0)
    assert ts.shape == (8,)
    assert ts[0] == 1000.0 and ts[-1] == 2000.0
    np.testing.assert_allclose(np.diff(ts), ts[1] - ts[0])
    # J rescales times
    np.testing.assert_allclose(snapshot_times(10, 2.0), ts / 2.0)


def test_cumulative_constant_and_linear():
    t = np.linspace(0.0, 8.0, 33)
    np.testing.assert_allclose(cumulative_average(t, np.full(33, 1.3)), 1.3, atol=1e-14)
    np.testing.assert_allclose(cumulative_average(t, 0.5 * t)[1:], 0.25 * t[1:], atol=1e-14)


def test_cumulative_bounds():
    rng = np.random.default_rng(5)
    t = np.linspace(0.0, 5.0, 51)
    v = rng.uniform(size=51)
    c = cumulative_average(t, v)
    assert np.all(c >= 0.0)
    assert np.all(c <= np.maximum.accumulate(v) + 1e-12)


def test_cumulative_grid_errors():
    with pytest.raises(InvalidSpecError):
        cumulative_average([1.0, 2.0], [0.0, 0.0])  # does not start at 0
    with pytest.raises(InvalidSpecError):
        cumulative_average([0.0, 2.0, 2.0], [0.0, 0.0, 0.0])


def synthetic_profiles(times, L, v0, c):
    prof = np.ones((len(times), L))
    for i, t in enumerate(times):
        k = int(np.floor(v0 * t))
        lo, hi = max(c - k, 0), min(c + k, L - 1)
        prof[i, lo:hi + 1] = -0.5
    return prof


def test_front_synthetic_velocity():
    times = np.linspace(0.0, 30.0, 61)
    prof = synthetic_profiles(times, 101, 1.0, 50)
    fit = light_cone_front(times, prof)
    assert abs(fit.velocity - 1.0) < 0.05
    assert np.all(fit.right - 50 == -(fit.left - 50))


def test_front_window_and_errors():
    times = np.linspace(0.0, 10.0, 21)
    prof = synthetic_profiles(times, 41, 0.5, 20)
    fit = light_cone_front(times, prof, window=(2.0, 8.0))
    assert fit.times[0] == 2.0 and fit.times[-1] == 8.0
    with pytest.raises(EmptyWindowError):
        light_cone_front(times, prof, window=(50.0, 60.0))
    with pytest.raises(InvalidSpecError):
        light_cone_front(times, prof, eps=1.5)
    with pytest.raises(NoFrontError):
        light_cone_front(times, np.ones((21, 41)))


def test_log_fit_exact():
    t = np.linspace(2.0, 50.0, 40)
    a, b, res = log_growth_fit(t, 2.0 * np.log2(t) + 1.0, (2.0, 50.0))
    assert a == pytest.approx(2.0, abs=1e-12)
    assert b == pytest.approx(1.0, abs=1e-12)
    assert res == pytest.approx(0.0, abs=1e-12)


def test_log_fit_errors():
    t = np.linspace(2.0, 50.0, 40)
    with pytest.raises(EmptyWindowError):
        log_growth_fit(t, t, (100.0, 200.0))
    with pytest.raises(InvalidSpecError):
        log_growth_fit(np.array([0.0, 1.0, 2.0]), np.zeros(3), (0.0, 2.0))
