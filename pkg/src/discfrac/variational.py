"""Fractional variational problems on (hZ)_a (Z when h = 1).

The functional is

    J[y] = sum_{t=a}^{rho(b)} h L(t, y(sigma t), leftdiff_alpha y(t), rightdiff_beta y(t))

and everything below is phrased through the dense operator matrices of
:mod:`discfrac.fracops`, so residuals for a whole batch of trial
functions are a handful of matrix products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Literal, Mapping, Optional, Sequence, Union

import numpy as np

from . import expr as ex
from .errors import ConfigError, NoConvergence, QuadratureError
from .fracops import left_diff_matrix, left_sum_matrix, right_diff_matrix, right_sum_matrix
from .special import h_falling_factorial_array
from .timescale import Grid, GridFunction

PARTIALS = ("L", "L_u", "L_v", "L_w", "L_uu", "L_uv", "L_uw", "L_vv", "L_vw", "L_ww")
_ARGS = ("u", "v", "w")

Fn = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Lagrangian:
    """L(t, u, v, w) with its first and second partials in u, v, w.

    Every accessor broadcasts over numpy arrays and returns an array of
    the broadcast shape.
    """

    funcs: Mapping[str, Fn]
    backing: str
    source: Optional[str] = None

    def __getattr__(self, name: str) -> Fn:
        if name in PARTIALS:
            return self.funcs[name]
        raise AttributeError(name)

    @classmethod
    def from_expression(cls, source: Union[str, ex.Ast], params: Optional[Mapping[str, float]] = None) -> "Lagrangian":
        """Symbolic backing: partials by :func:`discfrac.expr.differentiate`."""
        ast = ex.parse(source) if isinstance(source, str) else source
        params = dict(params or {})
        missing = ex.params(ast) - set(params)
        if missing:
            raise ConfigError(f"unbound parameters: {sorted(missing)}")
        asts = {"L": ast}
        for x in _ARGS:
            asts[f"L_{x}"] = ex.differentiate(ast, x)
        for i, x in enumerate(_ARGS):
            for y in _ARGS[i:]:
                asts[f"L_{x}{y}"] = ex.differentiate(asts[f"L_{x}"], y)

        def compile_(node: ex.Ast) -> Fn:
            def f(t, u, v, w):
                shape = np.broadcast(t, u, v, w).shape
                env = dict(params, t=t, u=u, v=v, w=w)
                return np.zeros(shape) + ex.eval_ast(node, env)

            return f

        text = source if isinstance(source, str) else ex.to_source(ast)
        return cls({k: compile_(a) for k, a in asts.items()}, "symbolic-AST", text)

    @classmethod
    def from_callable(cls, L: Fn, step: float = 1e-4) -> "Lagrangian":
        """Finite-difference backing: central differences of ``L``."""

        def shifted(args, k, d):
            a = list(args)
            a[k] = a[k] + d
            return a

        def first(k):
            def f(t, u, v, w):
                args = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (t, u, v, w)))
                e = step * np.maximum(1.0, np.abs(args[k]))
                return (L(*shifted(args, k, e)) - L(*shifted(args, k, -e))) / (2 * e)

            return f

        def second(k, j):
            def f(t, u, v, w):
                args = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (t, u, v, w)))
                ek = step * np.maximum(1.0, np.abs(args[k]))
                ej = step * np.maximum(1.0, np.abs(args[j]))
                pp = L(*shifted(shifted(args, k, ek), j, ej))
                pm = L(*shifted(shifted(args, k, ek), j, -ej))
                mp = L(*shifted(shifted(args, k, -ek), j, ej))
                mm = L(*shifted(shifted(args, k, -ek), j, -ej))
                return (pp - pm - mp + mm) / (4 * ek * ej)

            return f

        funcs: dict[str, Fn] = {"L": lambda t, u, v, w: np.zeros(np.broadcast(t, u, v, w).shape) + L(t, u, v, w)}
        for i, x in enumerate(_ARGS):
            funcs[f"L_{x}"] = first(i + 1)
            for j in range(i, 3):
                funcs[f"L_{x}{_ARGS[j]}"] = second(i + 1, j + 1)
        return cls(funcs, "finite-difference")


@dataclass(frozen=True)
class Fixed:
    value: float


@dataclass(frozen=True)
class Free:
    pass


FREE = Free()
Boundary = Union[Fixed, Free]


@dataclass(frozen=True, eq=False)
class VariationalProblem:
    grid: Grid
    lagrangian: Lagrangian
    alpha: float
    beta: float
    left_bc: Boundary
    right_bc: Boundary
    functional_form: Literal["definition", "frozen"] = "definition"

    def __post_init__(self):
        if self.functional_form not in ("definition", "frozen"):
            raise ConfigError(f"unknown functional_form {self.functional_form!r}")
        for name in ("alpha", "beta"):
            val = getattr(self, name)
            if not 0 < val <= 1:
                raise ConfigError(f"{name} must lie in (0, 1], got {val}")

    # operator matrices, built once per problem
    @cached_property
    def _Da(self) -> np.ndarray:
        return left_diff_matrix(self.grid.n_points, self.alpha, self.grid.h)

    @cached_property
    def _Db(self) -> np.ndarray:
        return right_diff_matrix(self.grid.n_points, self.beta, self.grid.h)

    @cached_property
    def _Ra(self) -> np.ndarray:
        # right difference of order alpha over [., rho(b)]
        return right_diff_matrix(self.grid.n_points - 1, self.alpha, self.grid.h)

    @cached_property
    def _Lb(self) -> np.ndarray:
        # left difference of order beta on T^kappa
        return left_diff_matrix(self.grid.n_points - 1, self.beta, self.grid.h)

    @cached_property
    def _tk(self) -> np.ndarray:
        return self.grid.points[:-1]

    def arguments(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``[y](t) = (t, y^sigma, leftdiff y, rightdiff y)`` on T^kappa; y may be batched."""
        y = np.asarray(y, dtype=float)
        return self._tk, y[..., 1:], y @ self._Da.T, y @ self._Db.T

    def partial(self, name: str, y: np.ndarray) -> np.ndarray:
        return getattr(self.lagrangian, name)(*self.arguments(y))

    # unknown vector <-> full y
    @property
    def unknown_indices(self) -> list[int]:
        n = self.grid.n_points
        idx = [] if isinstance(self.left_bc, Fixed) else [0]
        idx += list(range(1, n - 1))
        if not isinstance(self.right_bc, Fixed):
            idx.append(n - 1)
        return idx

    def embed(self, x: np.ndarray) -> np.ndarray:
        """Full (batched) y from the unknown vector, substituting fixed ends."""
        x = np.asarray(x, dtype=float)
        n = self.grid.n_points
        y = np.zeros(x.shape[:-1] + (n,))
        y[..., self.unknown_indices] = x
        if isinstance(self.left_bc, Fixed):
            y[..., 0] = self.left_bc.value
        if isinstance(self.right_bc, Fixed):
            y[..., -1] = self.right_bc.value
        return y

    def el_residuals(self, y: np.ndarray) -> np.ndarray:
        """EL residual at every point of T^{kappa^2}; y may be batched."""
        args = self.arguments(y)
        lu = self.lagrangian.L_u(*args)
        lv = self.lagrangian.L_v(*args)
        lw = self.lagrangian.L_w(*args)
        return lu[..., :-1] + lv @ self._Ra.T + lw @ self._Lb.T

    def natural_bc(self, y: np.ndarray, side: Literal["left", "right"]) -> np.ndarray:
        """Natural boundary expression on the given side; y may be batched."""
        h = self.grid.h
        t = self._tk
        args = self.arguments(y)
        if side == "left":
            g = 1.0 - self.alpha
            nu = 1.0 - self.beta
            lv = self.lagrangian.L_v(*args)
            lw = self.lagrangian.L_w(*args)
            out = -(h**g) * lv[..., 0] + h**nu * lw[..., 0]
            if g:
                c = g / math.gamma(g + 1.0)
                a = self.grid.a
                k0 = h_falling_factorial_array(t + g * h - a, g - 1.0, h)
                k1 = h_falling_factorial_array(t[1:] + g * h - (a + h), g - 1.0, h)
                out = out + c * h * (lv @ k0 - lv[..., 1:] @ k1)
            return out
        if side == "right":
            g = 1.0 - self.alpha
            nu = 1.0 - self.beta
            b = self.grid.b
            lu = self.lagrangian.L_u(*args)
            lv = self.lagrangian.L_v(*args)
            lw = self.lagrangian.L_w(*args)
            out = h * lu[..., -1] + h**g * lv[..., -1] - h**nu * lw[..., -1]
            if nu:
                c = nu / math.gamma(nu + 1.0)
                k0 = h_falling_factorial_array(b + nu * h - (t + h), nu - 1.0, h)
                k1 = h_falling_factorial_array((b - h) + nu * h - (t[:-1] + h), nu - 1.0, h)
                out = out + c * h * (lw @ k0 - lw[..., :-1] @ k1)
            return out
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def system(self, x: np.ndarray) -> np.ndarray:
        """Square residual system in the unknowns (batched on leading axes)."""
        y = self.embed(x)
        parts = [self.el_residuals(y)]
        if isinstance(self.left_bc, Free):
            parts.insert(0, self.natural_bc(y, "left")[..., None])
        if isinstance(self.right_bc, Free):
            parts.append(self.natural_bc(y, "right")[..., None])
        return np.concatenate(parts, axis=-1)

    def functional(self, y: np.ndarray) -> np.ndarray:
        """J[y] (batched). See :meth:`frozen_arguments` for the alternative form."""
        args = self.arguments(y) if self.functional_form == "definition" else self.frozen_arguments(y)
        return self.grid.h * np.sum(self.lagrangian.L(*args), axis=-1)

    @cached_property
    def _frozen_weights(self) -> tuple[np.ndarray, np.ndarray]:
        n, h = self.grid.n_points, self.grid.h
        one = np.ones(n)
        return left_sum_matrix(n, 1 - self.alpha, h) @ one, right_sum_matrix(n, 1 - self.beta, h) @ one

    def frozen_arguments(self, y: np.ndarray):
        """Arguments with every summand of a fractional sum read at the evaluation point.

        v(t) = Delta[y * S1](t) and w(t) = -Delta[y * R1](t), where S1 and R1
        are the left/right fractional sums of the constant 1. This is how the
        published functional values for the (hZ)_a cubic example were
        computed; it is not the functional's definition and is only offered
        to reproduce those tables.
        """
        y = np.asarray(y, dtype=float)
        s1, r1 = self._frozen_weights
        h = self.grid.h
        return self._tk, y[..., 1:], np.diff(y * s1, axis=-1) / h, -np.diff(y * r1, axis=-1) / h

    def legendre_terms(self, y: np.ndarray) -> np.ndarray:
        """The eleven terms of the Legendre expression, shape (n-2, 11).

        Order: h^2 Luu, 2h^{g+1} Luv, 2h^{nu+1}(nu-1) Luw,
        h^{2g}(g-1)^2 Lvv(sigma t), 2h^{nu+g}(g-1) Lvw(sigma t),
        2h^{nu+g}(nu-1) Lvw, h^{2nu}(nu-1)^2 Lww, h^{2nu} Lww(sigma t),
        left kernel sum of Lww, h^g Lvv, right kernel sum of Lvv.
        """
        y = np.asarray(y, dtype=float)
        h = self.grid.h
        g = 1.0 - self.alpha
        nu = 1.0 - self.beta
        args = self.arguments(y)
        P = {k: getattr(self.lagrangian, k)(*args) for k in ("L_uu", "L_uv", "L_uw", "L_vv", "L_vw", "L_ww")}
        m = self.grid.n_points - 2  # |T^{kappa^2}|
        cur = slice(0, m)
        nxt = slice(1, m + 1)
        terms = np.zeros((m, 11))
        terms[:, 0] = h**2 * P["L_uu"][cur]
        terms[:, 1] = 2 * h ** (g + 1) * P["L_uv"][cur]
        terms[:, 2] = 2 * h ** (nu + 1) * (nu - 1) * P["L_uw"][cur]
        terms[:, 3] = h ** (2 * g) * (g - 1) ** 2 * P["L_vv"][nxt]
        terms[:, 4] = 2 * h ** (nu + g) * (g - 1) * P["L_vw"][nxt]
        terms[:, 5] = 2 * h ** (nu + g) * (nu - 1) * P["L_vw"][cur]
        terms[:, 6] = h ** (2 * nu) * (nu - 1) ** 2 * P["L_ww"][cur]
        terms[:, 7] = h ** (2 * nu) * P["L_ww"][nxt]
        terms[:, 9] = h**g * P["L_vv"][cur]
        # interior kernel sums; offsets d >= 1 between the two points
        d = np.arange(1, m + 2, dtype=float)
        kw = nu * (1 - nu) / math.gamma(nu + 1) * h_falling_factorial_array((d - 1 + nu) * h, nu - 2.0, h)
        kv = g * (g - 1) / math.gamma(g + 1) * h_falling_factorial_array((d - 1 + g) * h, g - 2.0, h)
        lww = P["L_ww"]
        lvv = P["L_vv"]
        for i in range(m):
            # s = a .. t-h, kernel (t + nu h - sigma(s)) with t - s = d h
            s_idx = np.arange(i)
            terms[i, 8] = h**4 * float(np.sum(lww[s_idx] * kw[i - s_idx - 1] ** 2))
            # s = sigma(sigma(t)) .. rho(b), kernel (s + g h - sigma(sigma t))
            s_idx = np.arange(i + 2, m + 1)
            terms[i, 10] = h**4 * float(np.sum(lvv[s_idx] * kv[s_idx - i - 2] ** 2))
        return terms

    def hessian_diagonal(self, y: np.ndarray) -> np.ndarray:
        """h * d^2J/dy(sigma t)^2 for t in T^{kappa^2}, from the operator matrices.

        This is the exact second variation along a unit spike at sigma(t);
        it serves as an independent check of :meth:`legendre_terms`.
        """
        y = np.asarray(y, dtype=float)
        n = self.grid.n_points
        args = self.arguments(y)
        P = {k: getattr(self.lagrangian, k)(*args) for k in ("L_uu", "L_uv", "L_uw", "L_vv", "L_vw", "L_ww")}
        S = np.eye(n)[1:]
        A, B = self._Da, self._Db
        ops = {"u": S, "v": A, "w": B}
        H = np.zeros((n, n))
        for key, val in P.items():
            x, z = key[2], key[3]
            blk = ops[x].T @ (val[:, None] * ops[z])
            H += blk if x == z else blk + blk.T
        H *= self.grid.h
        return self.grid.h * np.diag(H)[1 : n - 1]


def _as_values(p: VariationalProblem, y: Union[GridFunction, Sequence[float], np.ndarray]) -> np.ndarray:
    v = y.values if isinstance(y, GridFunction) else np.asarray(y, dtype=float)
    if v.shape != (p.grid.n_points,):
        raise ConfigError("y must have one value per grid point")
    return v


def el_residual(p: VariationalProblem, y, t: float) -> float:
    """Euler-Lagrange residual at t in T^{kappa^2}."""
    i = p.grid.index(t)
    if i > p.grid.n_points - 3:
        raise IndexError("t must lie in T^{kappa^2}")
    return float(p.el_residuals(_as_values(p, y))[i])


def natural_bc_residual(p: VariationalProblem, y, side: Literal["left", "right"]) -> float:
    """Left side of the natural boundary condition at a free end."""
    bc = p.left_bc if side == "left" else p.right_bc
    if isinstance(bc, Fixed):
        raise ConfigError(f"the {side} boundary is fixed; no natural condition applies")
    return float(p.natural_bc(_as_values(p, y), side))


def evaluate_functional(p: VariationalProblem, y) -> float:
    return float(p.functional(_as_values(p, y)))


def legendre_lhs(p: VariationalProblem, y, t: float) -> float:
    """Left side of the Legendre inequality at t in T^{kappa^2}."""
    i = p.grid.index(t)
    if i > p.grid.n_points - 3:
        raise IndexError("t must lie in T^{kappa^2}")
    return float(p.legendre_terms(_as_values(p, y))[i].sum())


def legendre_check(p: VariationalProblem, y, rel_tol: float = 1e-9) -> tuple[np.ndarray, bool]:
    """Legendre values over T^{kappa^2} and whether all are non-negative within tolerance."""
    terms = p.legendre_terms(_as_values(p, y))
    vals = terms.sum(axis=1)
    ok = bool(np.all(vals >= -rel_tol * (1.0 + np.abs(terms).max(axis=1))))
    return vals, ok


def grid_norm(f: GridFunction, alpha: float, beta: float) -> float:
    """max|f^sigma| + max|leftdiff_alpha f| + max|rightdiff_beta f| over T^kappa."""
    g = f.grid
    n = g.n_points
    v = _full(f)
    return float(
        np.max(np.abs(v[1:]))
        + np.max(np.abs(left_diff_matrix(n, alpha, g.h) @ v))
        + np.max(np.abs(right_diff_matrix(n, beta, g.h) @ v))
    )


def _full(f: GridFunction) -> np.ndarray:
    if f.offset != 0 or len(f) != f.grid.n_points:
        raise ConfigError("function must be defined on the full grid")
    return f.values


# ---------------------------------------------------------------------------
# Solver


@dataclass(frozen=True)
class SolverConfig:
    n_starts: int = 2000
    radius: float = 5.0
    seed: int = 42
    newton_tol: float = 1e-10
    newton_max_iter: int = 60
    dedup_tol: float = 1e-6
    max_halvings: int = 30


@dataclass(frozen=True)
class ExtremalCandidate:
    y: GridFunction
    el_residual_inf: float
    functional_value: float
    legendre_values: np.ndarray
    legendre_verified: bool


def _fd_jacobian(F: Callable[[np.ndarray], np.ndarray], x: np.ndarray, fx: np.ndarray) -> np.ndarray:
    # x: (B, m), fx: (B, m) -> (B, m, m)
    B, m = x.shape
    J = np.empty((B, fx.shape[1], m))
    for j in range(m):
        e = 1e-7 * np.maximum(1.0, np.abs(x[:, j]))
        xp = x.copy()
        xp[:, j] += e
        J[:, :, j] = (F(xp) - fx) / e[:, None]
    return J


def newton_batch(
    F: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 60,
    max_halvings: int = 30,
) -> tuple[np.ndarray, np.ndarray]:
    """Damped Newton on a batch of starts; returns (x, converged mask).

    Each start takes full Newton steps, halving the step (at most
    ``max_halvings`` times) until the residual's 2-norm decreases.
    """
    x = np.array(x0, dtype=float)
    with np.errstate(all="ignore"):
        fx = F(x)
        norm = np.linalg.norm(fx, axis=1)
        active = np.isfinite(norm) & (np.max(np.abs(fx), axis=1) >= tol)
        done = np.isfinite(norm) & ~active
        for _ in range(max_iter):
            if not active.any():
                break
            ia = np.flatnonzero(active)
            xa, fa = x[ia], fx[ia]
            J = _fd_jacobian(F, xa, fa)
            step = np.full_like(xa, np.nan)
            ok = np.isfinite(J).all(axis=(1, 2))
            for k in np.flatnonzero(ok):
                try:
                    step[k] = np.linalg.solve(J[k], -fa[k])
                except np.linalg.LinAlgError:
                    pass
            good = np.isfinite(step).all(axis=1)
            lam = np.ones(len(ia))
            pending = good.copy()
            newx = xa.copy()
            newf = fa.copy()
            for _ in range(max_halvings + 1):
                if not pending.any():
                    break
                ip = np.flatnonzero(pending)
                trial = xa[ip] + lam[ip, None] * step[ip]
                ft = F(trial)
                nt = np.linalg.norm(ft, axis=1)
                better = np.isfinite(nt) & (nt < norm[ia[ip]])
                acc = ip[better]
                newx[acc] = trial[better]
                newf[acc] = ft[better]
                pending[acc] = False
                lam[ip[~better]] *= 0.5
            moved = good & ~pending
            x[ia] = newx
            fx[ia] = newf
            norm[ia] = np.linalg.norm(newf, axis=1)
            conv = np.max(np.abs(newf), axis=1) < tol
            done[ia[conv]] = True
            # stalled starts (no descent possible) are dropped
            active[ia[conv | ~moved]] = False
    return x, done


def solve_extremals(p: VariationalProblem, cfg: SolverConfig = SolverConfig(), starts: Optional[np.ndarray] = None) -> list[ExtremalCandidate]:
    """All distinct roots of the EL system found from ``cfg.n_starts`` random starts.

    Starts are uniform in ``[-radius, radius]^m``; ``starts`` overrides them.
    Returned candidates are sorted by functional value, ties broken by y.
    Raises NoConvergence when no start converges.
    """
    idx = p.unknown_indices
    m = len(idx)
    if m == 0:
        raise ConfigError("no unknowns: the grid has no interior points and both ends are fixed")
    if starts is None:
        rng = np.random.default_rng(cfg.seed)
        starts = rng.uniform(-cfg.radius, cfg.radius, size=(cfg.n_starts, m))
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    x, ok = newton_batch(p.system, starts, cfg.newton_tol, cfg.newton_max_iter, cfg.max_halvings)
    roots = x[ok]
    if len(roots) == 0:
        raise NoConvergence(f"none of {len(starts)} Newton starts converged")
    unique: list[np.ndarray] = []
    for r in roots:
        if all(np.max(np.abs(r - u)) >= cfg.dedup_tol for u in unique):
            unique.append(r)
    cands = [make_candidate(p, p.embed(r)) for r in unique]
    cands.sort(key=lambda c: (c.functional_value, tuple(c.y.values)))
    return cands


def make_candidate(p: VariationalProblem, y: np.ndarray) -> ExtremalCandidate:
    y = np.asarray(y, dtype=float)
    res = p.system(y[p.unknown_indices])
    vals, ok = legendre_check(p, y)
    return ExtremalCandidate(
        y=GridFunction(p.grid, y),
        el_residual_inf=float(np.max(np.abs(res))) if res.size else 0.0,
        functional_value=float(p.functional(y)),
        legendre_values=vals,
        legendre_verified=ok,
    )


# ---------------------------------------------------------------------------
# Closed-form and continuous references


def _tanh_sinh(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, tol: float = 1e-12, max_level: int = 12) -> float:
    """Double-exponential quadrature on [lo, hi], refining the step until two levels agree."""
    r = 0.5 * (hi - lo)
    prev = None
    step = 0.5
    for _ in range(max_level):
        k = np.arange(-int(6.0 / step), int(6.0 / step) + 1)
        s = k * step
        u = 0.5 * math.pi * np.sinh(s)
        x = np.tanh(u)
        # distance to the endpoints, computed without cancellation
        one_minus = 1.0 / (np.exp(np.abs(u)) * np.cosh(u))  # 1 - abs(x)
        w = 0.5 * math.pi * np.cosh(s) / np.cosh(u) ** 2
        left = r * np.where(x < 0, one_minus, 1.0 + x)  # node - lo
        right = r * np.where(x > 0, one_minus, 1.0 - x)  # hi - node
        keep = (left > 0) & (right > 0) & (w > 1e-300)
        nodes = np.where(x < 0, lo + left, hi - right)
        val = r * step * float(np.sum(w[keep] * f(nodes[keep], left[keep], right[keep])))
        if prev is not None and abs(val - prev) < tol * max(1.0, abs(val)):
            return val
        prev = val
        step /= 2
    raise QuadratureError(f"tanh-sinh did not reach {tol} on [{lo}, {hi}]")


def hz2_continuous(t: float, tol: float = 1e-12) -> float:
    """y(t) = 1/2 int_0^t dx / [(1-x)(t-x)]^(1/4), 0 < t <= 1.

    The interval is split at its midpoint so each half carries one of the
    algebraic endpoint singularities; endpoint distances are passed to the
    integrand exactly, avoiding cancellation in ``t - x``.
    """
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    mid = 0.5 * t

    def lower(x, dl, dr):
        return ((1.0 - x) * (t - x)) ** -0.25

    def upper(x, dl, dr):
        # dr = t - x exactly; 1 - x = (1 - t) + dr
        return ((1.0 - t) + dr) ** -0.25 * dr**-0.25

    return 0.5 * (_tanh_sinh(lower, 0.0, mid, tol) + _tanh_sinh(upper, mid, t, tol))


def reference_solution(example_id: str, **params: float) -> float:
    """Closed-form or quadrature reference values.

    ``z1_b2``: y(1) of the L = v^2 problem on {0, 1, 2}, params alpha, A, B.
    ``z3``: y(1) = 1/(alpha^2 + 1), param alpha.
    ``hz2_continuous``: continuous extremal, param t.
    """
    if example_id == "z1_b2":
        a, A, B = params["alpha"], params.get("A", 0.0), params.get("B", 1.0)
        return (2 * a * B + (a**3 - a**2 + 2 * a) * A) / (2 * a**2 + 2)
    if example_id == "z3":
        a = params["alpha"]
        return 1.0 / (a**2 + 1.0)
    if example_id == "hz2_continuous":
        return hz2_continuous(params["t"])
    raise ValueError(f"unknown reference {example_id!r}")
