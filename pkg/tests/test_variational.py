import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discfrac import catalog
from discfrac.errors import ConfigError, NoConvergence
from discfrac.timescale import Grid, GridFunction
from discfrac.variational import (
    FREE,
    PARTIALS,
    Fixed,
    Lagrangian,
    SolverConfig,
    VariationalProblem,
    el_residual,
    evaluate_functional,
    grid_norm,
    legendre_check,
    legendre_lhs,
    make_candidate,
    natural_bc_residual,
    reference_solution,
    solve_extremals,
)

QUICK = SolverConfig(n_starts=40)


def problem(src, n=3, h=1.0, alpha=1.0, beta=None, left=Fixed(0.0), right=Fixed(0.0), params=None):
    L = Lagrangian.from_expression(src, params)
    return VariationalProblem(Grid(0.0, h, n), L, alpha, alpha if beta is None else beta, left, right)


def test_el_residual_closed_form_b2():
    for a in (0.2, 0.5, 0.9):
        for A, B in ((0.0, 1.0), (0.3, -0.7)):
            p = catalog.z1(a, b=2, A=A, B=B)
            y1 = reference_solution("z1_b2", alpha=a, A=A, B=B)
            assert abs(el_residual(p, [A, y1, B], 0.0)) < 1e-12


def test_el_residual_classical_case():
    p = catalog.z1(1.0, b=2, A=0.2, B=1.4)
    assert abs(el_residual(p, [0.2, 0.8, 1.4], 0.0)) < 1e-12
    assert reference_solution("z1_b2", alpha=1.0, A=0.0, B=1.0) == 0.5
    z = problem("v^2", n=5)
    assert el_residual(z, np.zeros(5), 1.0) == 0.0
    with pytest.raises(IndexError):
        el_residual(z, np.zeros(5), 3.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.integers(3, 12), st.sampled_from([1.0, 0.25]))
def test_classical_reduction(seed, n, h):
    p = problem("u^2*t + v^4 - u*v + 3*v", n=n, h=h)
    y = np.random.default_rng(seed).normal(size=n)
    t, u, v, w = p.arguments(y)
    Lu = p.lagrangian.L_u(t, u, v, w)
    Lv = p.lagrangian.L_v(t, u, v, w)
    classical = Lu[:-1] - np.diff(Lv) / h
    assert np.allclose(p.el_residuals(y), classical, atol=1e-10)


def test_natural_bc_free_right_end():
    p = problem("v^2", n=4, right=FREE, left=Fixed(0.7))
    (c,) = solve_extremals(p, QUICK)
    assert np.allclose(c.y.values, 0.7, atol=1e-9)
    assert abs(natural_bc_residual(p, c.y, "right")) < 1e-9
    # a fixed-end extremal does not satisfy the natural condition
    fixed = problem("v^2", n=4, left=Fixed(0.0), right=Fixed(1.0))
    (cf,) = solve_extremals(fixed, QUICK)
    assert abs(natural_bc_residual(p, cf.y, "right")) > 1e-3
    zero = problem("v^2 + w^2", n=5, alpha=0.6, beta=0.4, left=FREE, right=Fixed(0.0))
    assert natural_bc_residual(zero, np.zeros(5), "left") == 0.0
    with pytest.raises(ConfigError):
        natural_bc_residual(zero, np.zeros(5), "right")


@settings(max_examples=30, deadline=None)
@given(st.floats(0.3, 1.0), st.floats(0.3, 1.0), st.sampled_from(["left", "right", "both"]), st.integers(4, 7))
def test_natural_bc_is_gradient_of_functional(alpha, beta, side, n):
    # a free end's natural condition is dJ/dy at that end (up to the factor h)
    left = FREE if side in ("left", "both") else Fixed(0.0)
    right = FREE if side in ("right", "both") else Fixed(1.0)
    p = problem("v^2 + 0.5*w^2 + u*v", n=n, h=0.5, alpha=alpha, beta=beta, left=left, right=right)
    y = np.linspace(0.1, 0.9, n) ** 2
    for end, i in (("left", 0), ("right", n - 1)):
        if (end == "left" and left is FREE) or (end == "right" and right is FREE):
            e = np.zeros(n)
            e[i] = 1e-6
            grad = (evaluate_functional(p, y + e) - evaluate_functional(p, y - e)) / 2e-6
            assert natural_bc_residual(p, y, end) == pytest.approx(grad, rel=1e-6, abs=1e-7)


def test_functional_examples():
    assert evaluate_functional(catalog.z3(0.5), [0.0, 0.8, 0.0]) == pytest.approx(-0.4, abs=1e-12)
    assert evaluate_functional(catalog.z1(1.0), [0, 0.25, 0.5, 0.75, 1]) == pytest.approx(0.25, abs=1e-12)
    assert evaluate_functional(problem("v^2", n=5), np.zeros(5)) == 0.0


def test_legendre_examples():
    p = problem("v^2", n=6)
    y = np.linspace(0, 1, 6)
    for t in p.grid.points[:-2]:
        assert legendre_lhs(p, y, t) == pytest.approx(4.0)
    ex3 = catalog.hz3a()
    row = lambda r: [0.0, *r[:3], 1.0]
    vals2, ok2 = legendre_check(ex3, row(catalog.TABLE_CUBIC_A[1]))
    vals1, ok1 = legendre_check(ex3, row(catalog.TABLE_CUBIC_A[0]))
    assert ok2 and np.all(vals2 >= 0)
    assert not ok1 and np.any(vals1 < 0)
    lin = problem("3*v - 2*w + u", n=6, alpha=0.5, beta=0.7)
    assert np.all(legendre_check(lin, y)[0] == 0)
    with pytest.raises(IndexError):
        legendre_lhs(p, y, 4.0)


@pytest.mark.parametrize("make,rows", [(catalog.hz3a, catalog.TABLE_CUBIC_A), (catalog.hz3b, catalog.TABLE_CUBIC_B)])
def test_legendre_verdicts_match_hessian_diagonal(make, rows):
    # the diagonal of the exact second variation is an independent derivation
    p = make()
    for r in rows:
        y = np.array([0.0, *r[: p.grid.n_points - 2], 1.0])
        _, ok = legendre_check(p, y)
        assert ok == bool(np.all(p.hessian_diagonal(y) >= 0))


def test_solver_examples():
    (c,) = solve_extremals(catalog.z1(0.5, b=2), QUICK)
    assert c.y.values[1] == pytest.approx(2 * 0.5 / (2 * 0.25 + 2), abs=1e-12)
    (z,) = solve_extremals(problem("v^2", n=6), QUICK)
    assert np.allclose(z.y.values, 0.0, atol=1e-12)
    assert z.legendre_verified


def test_solver_sorted_and_deterministic():
    p = catalog.hz3b()
    cfg = SolverConfig(n_starts=300)
    a = solve_extremals(p, cfg)
    b = solve_extremals(p, cfg)
    assert [c.y.values.tolist() for c in a] == [c.y.values.tolist() for c in b]
    J = [c.functional_value for c in a]
    assert J == sorted(J)
    for c in a:
        assert c.el_residual_inf < cfg.newton_tol
        assert c.legendre_verified == bool(np.all(c.legendre_values >= -1e-9 * (1 + np.abs(c.legendre_values).max())))


def test_no_convergence_is_an_error():
    # linear EL equation with no solution: u + v has L_u = 1 constant
    p = problem("u", n=4)
    with pytest.raises(NoConvergence):
        solve_extremals(p, QUICK)


def test_candidate_from_printed_row():
    c = make_candidate(catalog.z3(0.25), [0.0, 0.94117647058824, 0.0])
    assert c.el_residual_inf < 1e-12
    assert c.functional_value == pytest.approx(-0.47058823529412, abs=1e-12)


def test_problem_validation():
    with pytest.raises(ConfigError):
        problem("v^2", alpha=0.0)
    with pytest.raises(ConfigError):
        problem("v^2", alpha=1.2)
    with pytest.raises(ConfigError):
        Lagrangian.from_expression("theta*v^2")


def test_grid_norm_examples():
    g = Grid(0.0, 0.5, 7)
    assert grid_norm(GridFunction(g, np.zeros(7)), 0.4, 0.6) == 0.0


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.floats(-4, 4), st.floats(0.1, 1.0), st.floats(0.1, 1.0))
def test_grid_norm_is_a_seminorm(seed, c, a, b):
    g = Grid(0.0, 0.25, 9)
    rng = np.random.default_rng(seed)
    f, k = GridFunction(g, rng.normal(size=9)), GridFunction(g, rng.normal(size=9))
    assert grid_norm(GridFunction(g, c * f.values), a, b) == pytest.approx(abs(c) * grid_norm(f, a, b), rel=1e-12, abs=1e-14)
    assert grid_norm(GridFunction(g, f.values + k.values), a, b) <= grid_norm(f, a, b) + grid_norm(k, a, b) + 1e-12


def test_reference_solutions():
    assert reference_solution("z3", alpha=0.25) == pytest.approx(0.94117647058824, abs=1e-13)
    assert reference_solution("hz2_continuous", t=1.0) == pytest.approx(1.0, abs=1e-10)
    # oracle: scipy adaptive quadrature with the algebraic weight made explicit
    from scipy.integrate import quad

    for t in (0.1, 0.5, 0.9):
        ref = 0.5 * quad(lambda x: (1 - x) ** -0.25, 0, t, weight="alg", wvar=(0, -0.25))[0]
        assert reference_solution("hz2_continuous", t=t) == pytest.approx(ref, abs=1e-9)
    with pytest.raises(ValueError):
        reference_solution("nope")


@pytest.mark.parametrize("name", ["z1", "z3", "hz3"])
def test_symbolic_and_finite_difference_backends_agree(name):
    params = {"theta": 1.0}
    sym = Lagrangian.from_expression(catalog.LAGRANGIANS[name], params)
    fd = Lagrangian.from_callable(sym.L)
    rng = np.random.default_rng(3)
    pts = [rng.uniform(-1.5, 1.5, 100) for _ in range(4)]
    for k in PARTIALS[1:]:
        s = np.broadcast_to(getattr(sym, k)(*pts), (100,))
        f = np.broadcast_to(getattr(fd, k)(*pts), (100,))
        assert np.allclose(f, s, rtol=1e-6, atol=1e-6), k
    grid = Grid(0.0, 0.25, 6)
    y = rng.normal(size=6)
    P = [VariationalProblem(grid, L, 0.7, 0.4, Fixed(0.0), Fixed(1.0)) for L in (sym, fd)]
    r_sym, r_fd = (q.el_residuals(y) for q in P)
    assert np.allclose(r_fd, r_sym, rtol=1e-6, atol=1e-8)
