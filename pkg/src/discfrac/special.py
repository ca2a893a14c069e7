"""Gamma-function machinery and generalized factorials.

Everything here works on gamma *ratios* in log space, so arguments of a
few thousand do not overflow. Scalar functions return floats; the
``*_array`` variants broadcast over numpy arrays and are what the grid
operators use to build kernels.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError, PoleError

POLE_TOL = 1e-12

# Lanczos approximation, g = 7, n = 9.
_G = 7.0
_COEF = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


class SignedLogGamma(NamedTuple):
    """``log|Gamma(x)|`` together with the sign of ``Gamma(x)``."""

    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_abs)


def is_pole(x):
    """True where ``x`` is a non-positive integer within ``POLE_TOL``."""
    x = np.asarray(x, dtype=float)
    r = np.round(x)
    return (np.abs(x - r) < POLE_TOL) & (r <= 0)


def _lanczos_positive(x: np.ndarray) -> np.ndarray:
    # log Gamma(x) for x >= 0.5
    z = x - 1.0
    acc = np.full_like(z, _COEF[0])
    for i in range(1, len(_COEF)):
        acc = acc + _COEF[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(acc)


def log_gamma_signed_array(x) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``(log|Gamma(x)|, sign Gamma(x))``; poles give ``(inf, 0)``."""
    x = np.asarray(x, dtype=float)
    out_log = np.empty_like(x)
    out_sign = np.ones_like(x)
    pole = is_pole(x)
    big = (x >= 0.5) & ~pole
    small = (x < 0.5) & ~pole
    if np.any(big):
        out_log[big] = _lanczos_positive(x[big])
    if np.any(small):
        xs = x[small]
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), with sin taken on
        # the reduced argument to keep precision for large negative x
        r = np.round(xs)
        s = np.sin(math.pi * (xs - r)) * np.where(np.mod(r, 2) == 0, 1.0, -1.0)
        out_log[small] = _LOG_PI - np.log(np.abs(s)) - _lanczos_positive(1.0 - xs)
        out_sign[small] = np.sign(s)
    out_log[pole] = np.inf
    out_sign[pole] = 0.0
    return out_log, out_sign


def log_gamma_signed(x: float) -> SignedLogGamma:
    """Return ``log|Gamma(x)|`` and the sign of ``Gamma(x)``.

    Raises PoleError for x in {0, -1, -2, ...}.
    """
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at x={x!r}")
    la, sg = log_gamma_signed_array(np.array([float(x)]))
    return SignedLogGamma(float(la[0]), int(sg[0]))


def gamma(x: float) -> float:
    """Gamma(x) assembled from the signed log."""
    return log_gamma_signed(x).value


def gamma_ratio_array(p, q) -> np.ndarray:
    """Vectorized ``Gamma(p)/Gamma(q)`` with the pole conventions.

    Denominator pole alone gives 0; both poles give the limit
    ``(-1)^(m+n) n!/m!`` for ``p=-m``, ``q=-n``; a numerator pole alone
    raises DomainError.
    """
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    pp = is_pole(p)
    qp = is_pole(q)
    if np.any(pp & ~qp):
        raise DomainError("gamma ratio with a numerator pole and finite denominator")
    out = np.zeros(p.shape)
    reg = ~pp & ~qp
    if np.any(reg):
        lp, sp = log_gamma_signed_array(p[reg])
        lq, sq = log_gamma_signed_array(q[reg])
        out[reg] = sp * sq * np.exp(lp - lq)
    both = pp & qp
    if np.any(both):
        m = -np.round(p[both])
        n = -np.round(q[both])
        lim = np.array([math.lgamma(ni + 1.0) - math.lgamma(mi + 1.0) for mi, ni in zip(m, n)])
        out[both] = np.where(np.mod(m + n, 2) == 0, 1.0, -1.0) * np.exp(lim)
    return out


def _scalar(a: np.ndarray) -> float:
    return float(a.reshape(-1)[0])


def h_falling_factorial_array(x, y, h: float = 1.0) -> np.ndarray:
    """Vectorized ``h^y Gamma(x/h+1)/Gamma(x/h+1-y)``."""
    if h <= 0:
        raise DomainError("h must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = x / h + 1.0
    return np.power(h, y) * gamma_ratio_array(p, p - y)


def h_falling_factorial(x: float, y: float, h: float = 1.0) -> float:
    """The h-factorial ``x_h^(y) = h^y Gamma(x/h+1)/Gamma(x/h+1-y)``.

    With ``h=1`` this is the ordinary fractional falling factorial.
    """
    return _scalar(h_falling_factorial_array(x, y, h))


def falling_factorial(x: float, y: float) -> float:
    return h_falling_factorial(x, y, 1.0)


def rising_factorial(t: float, nu: float) -> float:
    """``Gamma(t+nu)/Gamma(t)``, same pole conventions as the falling one."""
    return _scalar(gamma_ratio_array(t + nu, t))


def rising_factorial_array(t, nu) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return gamma_ratio_array(t + nu, t)


def binomial_real(u: float, v: float) -> float:
    """``Gamma(u+1)/(Gamma(v+1) Gamma(u-v+1))`` for real u, v."""
    a = u + 1.0
    b = v + 1.0
    c = u - v + 1.0
    if is_pole(a):
        if not (is_pole(b) or is_pole(c)):
            raise DomainError(f"binomial({u}, {v}): numerator pole")
        # split the ratio so the pole pair cancels through the limit rule
        first, rest = (b, c) if is_pole(b) else (c, b)
        return _scalar(gamma_ratio_array(a, first)) / gamma(rest) if not is_pole(rest) else 0.0
    if is_pole(b) or is_pole(c):
        return 0.0
    return _scalar(gamma_ratio_array(a, b)) / gamma(c)
