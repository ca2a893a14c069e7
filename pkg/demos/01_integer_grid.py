# Fractional variational problems on the integers: solve, compare with the
# closed forms, watch the functional move with the order alpha.
# Run: python3 demos/01_integer_grid.py

import numpy as np

from discfrac import catalog
from discfrac.variational import SolverConfig, reference_solution, solve_extremals

cfg = SolverConfig(n_starts=50)

# %% sum of squared left differences on {0,..,4}, y(0)=0, y(4)=1
for alpha in (0.25, 0.5, 0.75, 1.0):
    (c,) = solve_extremals(catalog.z1(alpha), cfg)
    print(f"alpha={alpha:4}  y={np.round(c.y.values, 6)}  J={c.functional_value:.10f}  {c.legendre_verified=}")
# alpha=1 gives the straight line, J=1/4

# %% three points: the single interior value has a closed form
for alpha in (0.1, 0.5, 0.9):
    (c,) = solve_extremals(catalog.z1(alpha, b=2), cfg)
    print(alpha, c.y.values[1], reference_solution("z1_b2", alpha=alpha, A=0, B=1))

# %% 1/2 v^2 - u with zero ends: y(1) = 1/(alpha^2+1)
for alpha in (0.25, 0.5, 0.75, 1.0):
    (c,) = solve_extremals(catalog.z3(alpha), cfg)
    print(alpha, c.y.values[1], reference_solution("z3", alpha=alpha), c.functional_value)

# %% left and right differences together: J as a function of alpha has an interior minimum
alphas = np.linspace(0.3, 1.0, 15)
J = [solve_extremals(catalog.z2(a), cfg)[0].functional_value for a in alphas]
for a, j in zip(alphas, J):
    print(f"{a:.3f}  {j:.8f}  " + "#" * int(200 * (j - min(J))))
