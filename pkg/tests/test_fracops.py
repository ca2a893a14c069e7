import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discfrac.errors import DomainError, OrderError
from discfrac.fracops import (
    delta_frac_sum,
    diamond_sum,
    frac_diff,
    frac_sum,
    leibniz_series,
    left_diff_matrix,
    left_sum_matrix,
    nabla_frac_sum,
    right_diff_matrix,
    shift_identity_residual,
    summation_by_parts_residual,
)
from discfrac.timescale import Grid, GridFunction

SEEDS = st.integers(0, 2**31)


def rand_fn(g, seed, n=None):
    rng = np.random.default_rng(seed)
    return GridFunction(g, rng.normal(size=n or g.n_points))


def const_closed_form(t, a, nu, k):
    return math.gamma(t - a + 1 + nu) * k / (math.gamma(nu + 1) * math.gamma(t - a + 1))


def test_order_zero_is_identity():
    g = Grid(0.0, 0.5, 8)
    f = rand_fn(g, 1)
    for t in g.points:
        assert frac_sum(f, "left", 0.0, t) == f(t)
        assert frac_sum(f, "right", 0.0, t) == f(t)
    with pytest.raises(OrderError):
        frac_sum(f, "left", -0.1, 0.0)
    with pytest.raises(DomainError):
        frac_sum(f, "left", 0.5, 0.3)


@pytest.mark.parametrize("nu", [0.2, 0.5, 0.9, 1.7])
def test_constant_left_sum(nu):
    g = Grid(0.0, 1.0, 10)
    f = GridFunction(g, np.full(10, 2.5))
    for t in g.points:
        assert frac_sum(f, "left", nu, t) == pytest.approx(const_closed_form(t, 0, nu, 2.5), rel=1e-12)


def test_order_one_is_cumulative_sum():
    g = Grid(0.0, 0.25, 12)
    for seed in range(20):
        f = rand_fn(g, seed)
        cum = g.h * np.cumsum(f.values)
        got = [frac_sum(f, "left", 1.0, t) for t in g.points]
        assert np.allclose(got, cum, atol=1e-12)


def test_differences_examples():
    g = Grid(0.0, 0.5, 6)
    f = rand_fn(g, 3)
    for i, t in enumerate(g.points[:-1]):
        fwd = (f.values[i + 1] - f.values[i]) / g.h
        assert frac_diff(f, "left", 1.0, t) == pytest.approx(fwd)
        assert frac_diff(f, "right", 1.0, t) == pytest.approx(-fwd)
    with pytest.raises(IndexError):
        frac_diff(f, "left", 0.5, g.b)
    # constant: the delta of the closed form, nonzero
    gz = Grid(0.0, 1.0, 6)
    k = GridFunction(gz, np.full(6, 1.5))
    alpha = 0.4
    gam = 1 - alpha
    expect = const_closed_form(3, 0, gam, 1.5) - const_closed_form(2, 0, gam, 1.5)
    assert frac_diff(k, "left", alpha, 2.0) == pytest.approx(expect, rel=1e-12)
    assert expect != 0


def test_matrices_match_pointwise_operators():
    g = Grid(1.0, 0.25, 9)
    f = rand_fn(g, 5)
    L = left_sum_matrix(9, 0.6, 0.25) @ f.values
    assert np.allclose(L, [frac_sum(f, "left", 0.6, t) for t in g.points], atol=1e-13)
    D = left_diff_matrix(9, 0.3, 0.25) @ f.values
    assert np.allclose(D, [frac_diff(f, "left", 0.3, t) for t in g.points[:-1]], atol=1e-12)
    R = right_diff_matrix(9, 0.3, 0.25) @ f.values
    assert np.allclose(R, [frac_diff(f, "right", 0.3, t) for t in g.points[:-1]], atol=1e-12)


@pytest.mark.parametrize("which", ["left_Z", "right_Z", "left_h", "right_h"])
def test_shift_identity_trivial(which):
    g = Grid(0.0, 1.0, 7)
    f = rand_fn(g, 2)
    assert shift_identity_residual(f, 0.0, which, 3.0) == pytest.approx(0, abs=1e-14)
    z = GridFunction(g, np.zeros(7))
    assert shift_identity_residual(z, 0.5, which, 3.0) == 0.0


def test_shift_identity_z_needs_unit_step():
    g = Grid(0.0, 0.5, 7)
    with pytest.raises(DomainError):
        shift_identity_residual(rand_fn(g, 1), 0.5, "left_Z", 1.0)


def test_summation_by_parts_trivial_cases():
    g = Grid(0.0, 1.0, 8)
    gg = rand_fn(g, 4)
    zero = GridFunction(g, np.zeros(7))
    assert summation_by_parts_residual(zero, gg, 0.5, "Z") == 0.0
    f = rand_fn(g, 6, 7)
    assert abs(summation_by_parts_residual(f, gg, 1.0, "Z")) < 1e-12


def test_nabla_examples():
    g = Grid(0.0, 1.0, 9)
    f = rand_fn(g, 8)
    for i, t in enumerate(g.points):
        assert nabla_frac_sum(f, 1.0, t) == pytest.approx(f.values[: i + 1].sum(), abs=1e-12)
        # delta <-> nabla lemma
        assert delta_frac_sum(f, 0.5, t + 0.5) == pytest.approx(nabla_frac_sum(f, 0.5, t), abs=1e-12)
    k = GridFunction(g, np.full(9, -0.7))
    for t in g.points:
        assert nabla_frac_sum(k, 0.35, t) == pytest.approx(const_closed_form(t, 0, 0.35, -0.7), rel=1e-12)
    with pytest.raises(OrderError):
        nabla_frac_sum(f, 0.0, 1.0)


def test_diamond_examples():
    g = Grid(2.0, 1.0, 9)
    f = rand_fn(g, 9)
    t = 6.0
    assert diamond_sum(f, 0.4, 0.7, 1.0, t) == pytest.approx(delta_frac_sum(f, 0.4, t + 0.4))
    assert diamond_sum(f, 0.4, 0.7, 0.0, t) == pytest.approx(nabla_frac_sum(f, 0.7, t))
    k = GridFunction(g, np.full(9, 3.0))
    gam = 0.3
    expect = gam * const_closed_form(t, 2, 0.4, 3) + (1 - gam) * const_closed_form(t, 2, 0.7, 3)
    assert diamond_sum(k, 0.4, 0.7, gam, t) == pytest.approx(expect, rel=1e-12)
    with pytest.raises(OrderError):
        diamond_sum(f, 0.4, 0.7, 1.5, t)


def test_leibniz_examples():
    g = Grid(0.0, 1.0, 10)
    f = rand_fn(g, 11)
    one = GridFunction(g, np.ones(10))
    for K in (0, 1, 4):
        assert leibniz_series(f, one, 0.3, 0.6, 0.4, 7.0, K) == pytest.approx(diamond_sum(f, 0.3, 0.6, 0.4, 7.0))
    ident = GridFunction(g, g.points)
    fg = GridFunction(g, f.values * g.points)
    assert abs(leibniz_series(f, ident, 0.3, 0.6, 1.0, 7.0, 1) - frac_sum(fg, "left", 0.3, 7.0)) < 1e-9
    zero = GridFunction(g, np.zeros(10))
    assert leibniz_series(zero, ident, 0.3, 0.6, 0.5, 7.0, 3) == 0.0


# --- randomized identity suites -------------------------------------------------

orders = st.sampled_from([0.25, 0.5, 0.75])
steps = st.sampled_from([1.0, 0.25])


@settings(max_examples=60, deadline=None)
@given(SEEDS, st.floats(0.0, 2.0), st.sampled_from(["left", "right"]), st.integers(4, 20), st.data())
def test_shift_identities_random(seed, nu, side, n, data):
    for kind, h in (("Z", 1.0), ("h", data.draw(st.sampled_from([0.1, 0.25, 0.5])))):
        g = Grid(data.draw(st.floats(-3, 3)), h, n)
        f = rand_fn(g, seed)
        for t in g.points[:-1]:
            assert abs(shift_identity_residual(f, nu, f"{side}_{kind}", t)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(SEEDS, orders, steps, st.integers(3, 20))
def test_summation_by_parts_random(seed, alpha, h, n):
    g = Grid(0.0, h, n)
    f, gg = rand_fn(g, seed, n - 1), rand_fn(g, seed + 7)
    scale = max(1.0, np.abs(f.values).sum() * np.abs(gg.values).sum())
    assert abs(summation_by_parts_residual(f, gg, alpha, "Z" if h == 1 else "hZ")) < 1e-9 * scale


@settings(max_examples=60, deadline=None)
@given(SEEDS, st.floats(0.05, 2.5), st.integers(3, 20))
def test_delta_nabla_lemma(seed, nu, n):
    g = Grid(0.0, 1.0, n)
    f = rand_fn(g, seed)
    for t in g.points:
        assert abs(delta_frac_sum(f, nu, t + nu) - nabla_frac_sum(f, nu, t)) < 1e-9


def _diamond_fn(f, a, b, gam):
    return GridFunction(f.grid, [diamond_sum(f, a, b, gam, t) for t in f.grid.points])


@settings(max_examples=60, deadline=None)
@given(
    SEEDS,
    st.sampled_from([0.3, 0.7]),
    st.sampled_from([0.3, 0.7]),
    st.sampled_from([0.3, 0.7]),
    st.sampled_from([0.3, 0.7]),
    st.sampled_from([0.0, 0.5, 1.0]),
    st.integers(3, 14),
)
def test_diamond_composition(seed, a1, a2, b1, b2, gam, n):
    g = Grid(1.0, 1.0, n)
    f = rand_fn(g, seed)
    inner = _diamond_fn(f, a2, b2, gam)
    for t in g.points:
        lhs = diamond_sum(inner, a1, b1, gam, t)
        rhs = gam * diamond_sum(f, a1 + a2, b1 + a2, gam, t) + (1 - gam) * diamond_sum(f, a1 + b2, b1 + b2, gam, t)
        assert abs(lhs - rhs) < 1e-9


@settings(max_examples=60, deadline=None)
@given(SEEDS, st.floats(0.05, 1.5), st.floats(0.05, 1.5), st.integers(3, 15))
def test_delta_semigroup(seed, n1, n2, n):
    g = Grid(0.0, 1.0, n)
    f = rand_fn(g, seed)
    inner = GridFunction(g, [delta_frac_sum(f, n2, t + n2) for t in g.points])
    for t in g.points:
        assert abs(delta_frac_sum(inner, n1, t + n1) - delta_frac_sum(f, n1 + n2, t + n1 + n2)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(SEEDS, st.integers(0, 3), st.floats(0.1, 0.9), st.floats(0.1, 0.9), st.floats(0, 1), st.integers(4, 14), st.data())
def test_leibniz_terminates_for_polynomials(seed, d, alpha, beta, gam, n, data):
    g = Grid(0.0, 1.0, n)
    f = rand_fn(g, seed)
    coef = np.random.default_rng(seed + 1).normal(size=d + 1)
    poly = lambda t: float(np.polyval(coef, t))
    gv = GridFunction(g, [poly(t) for t in g.points])
    fg = GridFunction(g, f.values * gv.values)
    t = g.point(data.draw(st.integers(0, n - 1)))
    K = d + data.draw(st.integers(0, 2))
    assert abs(leibniz_series(f, gv, alpha, beta, gam, t, K) - diamond_sum(fg, alpha, beta, gam, t)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(SEEDS, st.sampled_from(["left", "right"]), st.integers(3, 12), st.data())
def test_small_order_continuity(seed, side, n, data):
    g = Grid(0.0, data.draw(st.sampled_from([1.0, 0.5])), n)
    f = rand_fn(g, seed)
    t = g.point(data.draw(st.integers(0, n - 1)))
    d = [abs(frac_sum(f, side, nu, t) - f(t)) for nu in (0.1, 0.01, 0.001)]
    assert d[0] >= d[1] >= d[2]


@settings(max_examples=60, deadline=None)
@given(SEEDS, st.floats(-3, 3), st.floats(0.05, 2), st.integers(3, 12))
def test_linearity(seed, c, nu, n):
    g = Grid(0.0, 1.0, n)
    f, k = rand_fn(g, seed), rand_fn(g, seed + 3)
    comb = GridFunction(g, c * f.values + k.values)
    for t in g.points:
        for side in ("left", "right"):
            lin = c * frac_sum(f, side, nu, t) + frac_sum(k, side, nu, t)
            assert frac_sum(comb, side, nu, t) == pytest.approx(lin, abs=1e-12 * (1 + abs(lin)))
        lin = c * diamond_sum(f, nu, 0.4, 0.3, t) + diamond_sum(k, nu, 0.4, 0.3, t)
        assert diamond_sum(comb, nu, 0.4, 0.3, t) == pytest.approx(lin, abs=1e-12 * (1 + abs(lin)))
