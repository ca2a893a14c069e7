# The operators underneath: fractional sums as Toeplitz matrices, the
# identities they satisfy, and the z-domain view of the fractional integral.
# Run: python3 demos/04_operators.py

import numpy as np

from discfrac.fracops import (
    delta_frac_sum,
    frac_sum,
    left_sum_matrix,
    nabla_frac_sum,
    shift_identity_residual,
    summation_by_parts_residual,
)
from discfrac.laplace import FormalTransform, frac_derivative, frac_integral, laplace_numeric
from discfrac.special import h_falling_factorial
from discfrac.timescale import Grid, GridFunction

rng = np.random.default_rng(0)

# %% h-factorials: gamma ratios, zero at the poles of the denominator
print(h_falling_factorial(5, 2), h_falling_factorial(2.5, 0.5), h_falling_factorial(2, 3))

# %% the left sum of order nu is lower triangular Toeplitz
print(np.round(left_sum_matrix(5, 0.5, 0.25), 4))
g = Grid(0.0, 0.25, 9)
f = GridFunction(g, rng.normal(size=9))
print([round(float(frac_sum(f, "left", nu, 1.0) - f(1.0)), 6) for nu in (0.1, 0.01, 0.001)])  # -> 0 as nu -> 0

# %% identities hold to rounding for any f
print(max(abs(shift_identity_residual(f, 0.6, "left_h", t)) for t in g.points[:-1]))
print(summation_by_parts_residual(GridFunction(g, rng.normal(size=8)), f, 0.4))
gz = Grid(0.0, 1.0, 9)
fz = GridFunction(gz, rng.normal(size=9))
print(delta_frac_sum(fz, 0.5, 4.5), nabla_frac_sum(fz, 0.5, 4.0))  # delta and nabla sums agree

# %% transforms: numeric series on (hZ)_0 against the monomial algebra
print(laplace_numeric(lambda t: t, 2.0, 0.5), 1 / 2.0**2)
F = FormalTransform.monomial(2)  # h_2(t, 0)
print(frac_integral(F, 0.5).terms, frac_derivative(F, 0.5).terms, frac_derivative(F, 2.5).terms)
