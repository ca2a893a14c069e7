"""Generalized Laplace transform on (hZ)_0 and the fractional operators on
the span of generalized monomials.

On (hZ)_0 the transform is the weighted geometric series

    F(z) = sum_{k>=0} f(kh) h (1 + hz)^-(k+1).

For the fractional integral/derivative we never invert numerically:
transforms of ``h_k(t, 0)`` are ``z^-(k+1)``, and the operators act on
such terms exactly, so :class:`FormalTransform` carries finite sums of
``c z^-p`` with real ``p``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Union

from .errors import BudgetError, DivergenceError, DomainError, OrderError
from .timescale import Grid, generalized_polynomial

Func = Callable[[float], float]

MAX_TERMS = 10**6


def hilger_real(z: complex, h: float) -> float:
    """Hilger real part ``(|zh + 1| - 1)/h``."""
    return (abs(z * h + 1) - 1) / h


def hilger_imag(z: complex, h: float) -> float:
    """Hilger imaginary part ``Arg(zh + 1)/h``."""
    return cmath.phase(z * h + 1) / h


def laplace_numeric(f: Func, z: float, h: float, tol: float = 1e-14, max_terms: int = MAX_TERMS) -> float:
    """Truncated transform of ``f`` sampled on (hZ)_0 at real ``z``.

    Summation stops once a geometric bound on the remaining tail, built
    from the last term and the observed term ratio, drops below
    ``tol * |partial sum|`` for three consecutive terms.
    """
    if h <= 0:
        raise DomainError("h must be positive")
    base = 1.0 + h * z
    if abs(base) <= 1.0:
        raise DivergenceError(f"|1 + hz| = {abs(base)} <= 1: the series does not decay")
    q = 1.0 / base
    total = 0.0
    prev = None
    weight = h * q
    calm = 0
    for k in range(max_terms):
        term = f(k * h) * weight
        total += term
        weight *= q
        a = abs(term)
        ratio = abs(q)
        if prev:
            ratio = max(ratio, a / prev)
        tail = a * ratio / (1.0 - ratio) if ratio < 1 else math.inf
        calm = calm + 1 if tail <= tol * abs(total) else 0
        if calm >= 3:
            return total
        prev = a
    raise BudgetError(f"transform not converged after {max_terms} terms")


def derivative_rule_residual(f: Func, z: float, h: float, tol: float = 1e-14) -> float:
    """``L[f^Delta](z) - (z L[f](z) - f(0))``."""

    def df(t: float) -> float:
        return (f(t + h) - f(t)) / h

    return laplace_numeric(df, z, h, tol) - (z * laplace_numeric(f, z, h, tol) - f(0.0))


def convolve(f: Func, g: Callable[[float, float], float], t: float, h: float) -> float:
    """``(f * g)(t) = h sum_{tau=0}^{t-h} f(tau) g(t, tau + h)`` on (hZ)_0."""
    n = round(t / h)
    if abs(t / h - n) > 1e-9 or n < 0:
        raise DomainError(f"{t!r} is not a point of (hZ)_0")
    return h * sum(f(k * h) * g(t, (k + 1) * h) for k in range(n))


def exp_h(c: float, h: float) -> Func:
    """``t -> e_c(t, 0) = (1 + hc)^(t/h)`` on (hZ)_0."""
    return lambda t: (1.0 + h * c) ** round(t / h)


# ---------------------------------------------------------------------------
# formal algebra on sums of c z^-p


def _is_nat(x: float, tol: float = 1e-12) -> bool:
    return x > -tol and abs(x - round(x)) < tol


@dataclass(frozen=True)
class FormalTransform:
    """Finite sum ``sum c z^-p`` with every ``p > 0``; no terms means zero."""

    terms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        merged: dict[float, list[float]] = {}  # rounded exponent -> [exponent, coefficient]
        for c, p in self.terms:
            if not p > 0:
                raise DomainError(f"exponent must be positive, got {p}")
            slot = merged.setdefault(round(p, 12), [p, 0.0])
            slot[1] += c
        terms = tuple((c, p) for _, (p, c) in sorted(merged.items()) if c != 0)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, k: int, c: float = 1.0) -> "FormalTransform":
        """Transform of ``c h_k(t, 0)``."""
        if k < 0 or int(k) != k:
            raise DomainError("monomial degree must be a non-negative integer")
        return cls(((c, k + 1.0),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FormalTransform") -> "FormalTransform":
        return FormalTransform(self.terms + other.terms)

    def __rmul__(self, c: float) -> "FormalTransform":
        return FormalTransform(tuple((c * a, p) for a, p in self.terms))

    def __mul__(self, other: "FormalTransform") -> "FormalTransform":
        """Product of transforms (the convolution of the originals)."""
        return FormalTransform(tuple((a * b, p + q) for a, p in self.terms for b, q in other.terms))

    def __call__(self, z: float) -> float:
        return sum(c * z ** (-p) for c, p in self.terms)

    @property
    def invertible(self) -> bool:
        return all(_is_nat(p - 1) for _, p in self.terms)

    @property
    def invertible_degree(self) -> int | None:
        """``m`` when this is a single term inverting to ``c h_m(t, 0)``."""
        if len(self.terms) == 1 and self.invertible:
            return int(round(self.terms[0][1] - 1))
        return None

    def inverse(self, t: float, grid: Grid) -> float:
        """Value at ``t`` of the inverse transform on the grid (h_m terms only)."""
        if not self.invertible:
            raise DomainError("only terms z^-(m+1) with integer m >= 0 are inverted")
        return sum(c * generalized_polynomial(int(round(p - 1)), t, grid.a, grid) for c, p in self.terms)


ZERO = FormalTransform()


@dataclass(frozen=True)
class Constant:
    """A constant function c (as opposed to a monomial degree)."""

    c: float = 1.0


def _order_n(alpha: float) -> int:
    if not alpha > 0:
        raise OrderError(f"order must be positive, got {alpha}")
    return math.ceil(alpha - 1e-12)


def frac_integral(F: FormalTransform, alpha: float) -> FormalTransform:
    """Fractional integral of order alpha: multiply by ``z^-alpha``."""
    _order_n(alpha)
    return FormalTransform(tuple((c, p + alpha) for c, p in F.terms))


def frac_derivative(F: FormalTransform, alpha: float) -> FormalTransform:
    """Fractional derivative of order alpha in (n-1, n] on the monomial span.

    ``z^-(k+1)`` (that is ``h_k``) with ``k <= n-1`` is annihilated by the
    initial-value terms; other terms become ``z^-(p-alpha)``. A term with
    non-integer ``p - 1`` must have ``p > n`` so its initial values vanish.
    """
    n = _order_n(alpha)
    out = []
    for c, p in F.terms:
        if _is_nat(p - 1):
            if round(p - 1) <= n - 1:
                continue
        elif p <= n:
            raise DomainError(f"z^-{p} has nonzero initial data outside the monomial span")
        out.append((c, p - alpha))
    return FormalTransform(tuple(out))


def frac_monomial_op(
    kind: Literal["integral", "derivative"], k: Union[int, Constant], alpha: float
) -> FormalTransform:
    """Fractional integral or derivative of ``h_k(t, 0)`` or of a constant.

    Returns :data:`ZERO` for the annihilated cases.
    """
    _order_n(alpha)
    if isinstance(k, Constant):
        if kind == "derivative":
            return ZERO
        F = FormalTransform.monomial(0, k.c)
    else:
        F = FormalTransform.monomial(k)
    if kind == "integral":
        return frac_integral(F, alpha)
    if kind == "derivative":
        return frac_derivative(F, alpha)
    raise ValueError(f"kind must be 'integral' or 'derivative', got {kind!r}")


def span(coeffs: Iterable[float]) -> FormalTransform:
    """Transform of ``sum_k coeffs[k] h_k(t, 0)``."""
    return FormalTransform(tuple((c, k + 1.0) for k, c in enumerate(coeffs)))
