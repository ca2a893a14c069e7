# Shrinking the step h on (hZ)_0: discrete extremals approach the continuous ones.
# Run: python3 demos/02_step_size.py

import numpy as np

from discfrac import catalog
from discfrac.variational import SolverConfig, hz2_continuous, solve_extremals

cfg = SolverConfig(n_starts=50)

# %% alpha = 1: the discrete extremal is t(1-t)/2 at every grid point
for h in (0.5, 0.25, 0.125, 0.0625):
    (c,) = solve_extremals(catalog.hz1(1.0, h), cfg)
    t = c.y.points
    print(f"h={h:<7} max grid error {np.max(np.abs(c.y.values - t * (1 - t) / 2)):.1e}")

# %% fractional orders bend the extremal away from the parabola
for alpha in (0.25, 0.5, 0.75):
    (c,) = solve_extremals(catalog.hz1(alpha, 0.1), cfg)
    print(alpha, np.round(c.y.values, 4))

# %% alpha = 3/4, y(0)=0, y(1)=1, compared with the continuous extremal
ts = np.linspace(0.05, 1, 20)
cont = np.array([hz2_continuous(t) for t in ts])
print("continuous:", np.round(cont, 4))
for h in (1 / 2, 1 / 8, 1 / 16, 1 / 30):
    (c,) = solve_extremals(catalog.hz2(h), cfg)
    print(f"h={h:.4f}  y(0.5)={c.y(0.5):.6f}  continuous {hz2_continuous(0.5):.6f}")
