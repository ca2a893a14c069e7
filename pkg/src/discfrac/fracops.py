"""Fractional sums and differences on (hZ)_a, plus nabla/diamond sums on Z.

All operators use the re-indexed presentation in which f and the result
live on the same grid ``T``. For ``t`` in ``T``:

    left sum   S(t) = h^nu f(t) + nu/Gamma(nu+1) * sum_{s=a}^{t-h} (t+nu h-sigma(s))_h^(nu-1) f(s) h
    right sum  R(t) = h^nu f(t) + nu/Gamma(nu+1) * sum_{s=sigma(t)}^{b} (s+nu h-sigma(t))_h^(nu-1) f(s) h

where ``b`` is the last point of f's domain. The fractional differences of
order alpha are ``Delta S`` (left) and ``-Delta R`` (right) taken with sum
order ``1 - alpha``.

The operators are linear, so the ``*_matrix`` builders return the dense
matrices the variational solver works with.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Literal, Union

import numpy as np
from scipy.linalg import toeplitz

from .errors import DomainError, OrderError
from .special import (
    binomial_real,
    h_falling_factorial,
    h_falling_factorial_array,
    rising_factorial_array,
)
from .timescale import GridFunction, delta_derivative_values

Side = Literal["left", "right"]


def _check_sum_order(nu: float) -> None:
    if not nu >= 0:
        raise OrderError(f"sum order must be >= 0, got {nu}")


def _check_diff_order(alpha: float) -> None:
    if not 0 < alpha <= 1:
        raise OrderError(f"difference order must lie in (0, 1], got {alpha}")


def sum_kernel(m: np.ndarray, nu: float, h: float) -> np.ndarray:
    """Weights ``nu/Gamma(nu+1) (m h + nu h - h)_h^(nu-1) h`` for offsets m >= 1."""
    m = np.asarray(m, dtype=float)
    if nu == 0:
        return np.zeros_like(m)
    c = nu / math.gamma(nu + 1.0)
    return c * h * h_falling_factorial_array((m - 1.0 + nu) * h, nu - 1.0, h)


@lru_cache(maxsize=256)
def _left_sum_matrix(n: int, nu: float, h: float) -> np.ndarray:
    col = np.empty(n)
    col[0] = h**nu
    col[1:] = sum_kernel(np.arange(1, n), nu, h)
    row = np.zeros(n)
    row[0] = col[0]
    m = toeplitz(col, row)
    m.setflags(write=False)
    return m


def left_sum_matrix(n: int, nu: float, h: float) -> np.ndarray:
    """n x n matrix of the left fractional sum of order nu."""
    _check_sum_order(nu)
    return _left_sum_matrix(int(n), float(nu), float(h))


def right_sum_matrix(n: int, nu: float, h: float) -> np.ndarray:
    """n x n matrix of the right fractional sum; the kernel is the mirror image."""
    return left_sum_matrix(n, nu, h).T


def left_diff_matrix(n: int, alpha: float, h: float) -> np.ndarray:
    """(n-1) x n matrix of the left fractional difference of order alpha."""
    _check_diff_order(alpha)
    s = left_sum_matrix(n, 1.0 - alpha, h)
    return (s[1:] - s[:-1]) / h


def right_diff_matrix(n: int, alpha: float, h: float) -> np.ndarray:
    """(n-1) x n matrix of the right fractional difference of order alpha."""
    _check_diff_order(alpha)
    r = right_sum_matrix(n, 1.0 - alpha, h)
    return -(r[1:] - r[:-1]) / h


def _local_index(f: GridFunction, t: float) -> int:
    i = f.grid.index(t) - f.offset
    if not 0 <= i < len(f):
        raise DomainError(f"{t!r} is outside the function's domain")
    return i


def _left_sum_at(v: np.ndarray, i: int, nu: float, h: float) -> float:
    if nu == 0:
        return float(v[i])
    w = sum_kernel(np.arange(i, 0, -1), nu, h)
    return h**nu * v[i] + float(w @ v[:i])


def _right_sum_at(v: np.ndarray, i: int, nu: float, h: float) -> float:
    if nu == 0:
        return float(v[i])
    w = sum_kernel(np.arange(1, len(v) - i), nu, h)
    return h**nu * v[i] + float(w @ v[i + 1 :])


def frac_sum(f: GridFunction, side: Side, nu: float, t: float) -> float:
    """Left or right fractional sum of order ``nu >= 0`` at grid point ``t``.

    The left sum starts at f's first point, the right sum ends at f's last.
    """
    _check_sum_order(nu)
    i = _local_index(f, t)
    h = f.grid.h
    if side == "left":
        return _left_sum_at(f.values, i, nu, h)
    if side == "right":
        return _right_sum_at(f.values, i, nu, h)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def frac_diff(f: GridFunction, side: Side, alpha: float, t: float) -> float:
    """Left or right fractional difference of order ``alpha`` in (0, 1]."""
    _check_diff_order(alpha)
    i = _local_index(f, t)
    if i + 1 >= len(f):
        raise IndexError("fractional difference needs the next grid point")
    h = f.grid.h
    g = 1.0 - alpha
    if side == "left":
        return (_left_sum_at(f.values, i + 1, g, h) - _left_sum_at(f.values, i, g, h)) / h
    if side == "right":
        return -(_right_sum_at(f.values, i + 1, g, h) - _right_sum_at(f.values, i, g, h)) / h
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


ShiftKind = Literal["left_Z", "right_Z", "left_h", "right_h"]


def shift_identity_residual(f: GridFunction, nu: float, which: ShiftKind, t: float) -> float:
    """LHS - RHS of the identities moving a delta derivative through a sum.

    left:  S_nu(f^Delta)(t) = (S_nu f)^Delta(t) - nu/Gamma(nu+1) (t+nu h-a)_h^(nu-1) f(a)
    right: R_nu,rho(b)(f^Delta)(t) = nu/Gamma(nu+1) (b+nu h-sigma(t))_h^(nu-1) f(b) + (R_nu,b f)^Delta(t)

    The ``_Z`` variants are the h = 1 statements and insist on h = 1.
    """
    _check_sum_order(nu)
    g = f.grid
    h = g.h
    if which.endswith("_Z") and h != 1:
        raise DomainError("the Z identities need h = 1")
    i = _local_index(f, t)
    if i + 1 >= len(f):
        raise IndexError("t must lie in T^kappa of f's domain")
    df = delta_derivative_values(f).values
    v = f.values
    c = nu / math.gamma(nu + 1.0)
    a = f.points[0]
    b = f.points[-1]
    if which in ("left_Z", "left_h"):
        lhs = _left_sum_at(df, i, nu, h)
        dsum = (_left_sum_at(v, i + 1, nu, h) - _left_sum_at(v, i, nu, h)) / h
        corr = c * h_falling_factorial(t + nu * h - a, nu - 1.0, h) * v[0] if nu else 0.0
        return lhs - (dsum - corr)
    if which in ("right_Z", "right_h"):
        lhs = _right_sum_at(df, i, nu, h)
        dsum = (_right_sum_at(v, i + 1, nu, h) - _right_sum_at(v, i, nu, h)) / h
        corr = c * h_falling_factorial(b + nu * h - (t + h), nu - 1.0, h) * v[-1] if nu else 0.0
        return lhs - (corr + dsum)
    raise ValueError(f"unknown identity {which!r}")


def summation_by_parts_residual(
    f: GridFunction, g: GridFunction, alpha: float, grid_kind: Literal["Z", "hZ"] = "hZ"
) -> float:
    """LHS - RHS of fractional summation by parts.

    ``f`` lives on T^kappa (one point shorter than ``g``), ``g`` on T:

        int_a^b f * (left diff g) = h^g f(rho b) g(b) - h^g f(a) g(a)
            + int_a^{rho b} (right diff over [., rho b] of f) * g^sigma
            + g/Gamma(g+1) g(a) (int_a^b (t+g h-a)^(g-1) f - int_{sigma a}^b (t+g h-sigma a)^(g-1) f)

    with ``g = 1 - alpha`` the complementary sum order.
    """
    _check_diff_order(alpha)
    grid = g.grid
    h = grid.h
    if grid_kind == "Z" and h != 1:
        raise DomainError("the Z formula needs h = 1")
    n = len(g)
    if len(f) != n - 1 or f.offset != g.offset:
        raise DomainError("f must live on T^kappa of g's domain")
    fv, gv = f.values, g.values
    gam = 1.0 - alpha
    lhs = h * float(fv @ (left_diff_matrix(n, alpha, h) @ gv))
    t = f.points
    a = t[0]
    boundary = h**gam * (fv[-1] * gv[-1] - fv[0] * gv[0])
    inner = h * float((right_diff_matrix(n - 1, alpha, h) @ fv) @ gv[1:-1]) if n > 2 else 0.0
    corr = 0.0
    if gam:
        c = gam / math.gamma(gam + 1.0)
        k0 = h_falling_factorial_array(t + gam * h - a, gam - 1.0, h)
        k1 = h_falling_factorial_array(t[1:] + gam * h - (a + h), gam - 1.0, h)
        corr = c * gv[0] * h * (float(k0 @ fv) - float(k1 @ fv[1:]))
    return lhs - (boundary + inner + corr)


# ---------------------------------------------------------------------------
# Operators on N_a (h = 1) from the nabla/diamond part of the theory.


def _require_unit(f: GridFunction) -> None:
    if f.grid.h != 1:
        raise DomainError("nabla and diamond operators are defined on h = 1 grids")


def nabla_frac_sum(f: GridFunction, beta: float, t: float) -> float:
    """``1/Gamma(beta) sum_{s=a}^{t} (t - rho(s))^{rising(beta-1)} f(s)``."""
    if not beta > 0:
        raise OrderError("nabla sum order must be positive")
    _require_unit(f)
    i = _local_index(f, t)
    d = np.arange(i, -1, -1) + 1.0  # t - rho(s) for s = a .. t
    w = rising_factorial_array(d, beta - 1.0) / math.gamma(beta)
    return float(w @ f.values[: i + 1])


def delta_frac_sum(f: GridFunction, nu: float, T: float) -> float:
    """Unshifted delta sum ``1/Gamma(nu) sum_{s=a}^{T-nu} (T - sigma(s))^(nu-1) f(s)``.

    ``T`` lives on ``a + nu + Z``; values of ``T - nu`` before ``a`` give
    the empty sum.
    """
    if not nu > 0:
        raise OrderError("delta sum order must be positive")
    _require_unit(f)
    a = f.points[0]
    top = T - nu - a
    k = round(top)
    if abs(top - k) > 1e-9:
        raise DomainError(f"{T!r} is not on a + {nu} + Z")
    if k < 0:
        return 0.0
    if k >= len(f):
        raise DomainError(f"{T!r} needs values beyond the function's domain")
    s = a + np.arange(k + 1)
    w = h_falling_factorial_array(T - s - 1.0, nu - 1.0, 1.0) / math.gamma(nu)
    return float(w @ f.values[: k + 1])


def diamond_sum(f: GridFunction, alpha: float, beta: float, gamma: float, t: float) -> float:
    """``gamma (Delta^-alpha f)(t+alpha) + (1-gamma) (nabla^-beta f)(t)``."""
    if not (alpha > 0 and beta > 0 and 0 <= gamma <= 1):
        raise OrderError("diamond sum needs alpha, beta > 0 and gamma in [0, 1]")
    return gamma * delta_frac_sum(f, alpha, t + alpha) + (1.0 - gamma) * nabla_frac_sum(f, beta, t)


def nabla_power(g: Union[GridFunction, Callable[[float], float]], k: int, t: float) -> float:
    """k-th backward difference ``sum_j (-1)^j C(k,j) g(t-j)``."""
    return sum((-1) ** j * math.comb(k, j) * g(t - j) for j in range(k + 1))


def leibniz_series(
    f: GridFunction,
    g: Union[GridFunction, Callable[[float], float]],
    alpha: float,
    beta: float,
    gamma: float,
    t: float,
    K: int,
) -> float:
    """Partial sum through k = K of the Leibniz expansion of the diamond sum of f*g.

    Term k pairs ``C(-order, k) (nabla^k g)(t)`` with the delta sum of f of
    order ``order + k`` evaluated at ``t + order``, whose range stops at
    ``t - k``; for ``t - k < a`` the factor is an empty sum and the term
    drops out without touching g before the left endpoint.
    """
    if K < 0:
        raise ValueError("truncation K must be >= 0")
    if not (alpha > 0 and beta > 0 and 0 <= gamma <= 1):
        raise OrderError("Leibniz series needs alpha, beta > 0 and gamma in [0, 1]")
    _require_unit(f)
    i = _local_index(f, t)
    total = 0.0
    for weight, order in ((gamma, alpha), (1.0 - gamma, beta)):
        if weight == 0:
            continue
        for k in range(min(K, i) + 1):
            total += (
                weight
                * binomial_real(-order, k)
                * nabla_power(g, k, t)
                * delta_frac_sum(f, order + k, t + order)
            )
    return total
