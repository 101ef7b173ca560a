"""Rayleigh quotients of the Hardy-adjusted norm over centered hyperbolic bumps."""

import numpy as np

from tmlab.functionals import hardy_rayleigh, minimize_rayleigh
from tmlab.trial import power_bump

for a in np.geomspace(0.1, 12.0, 9):
    print(f"radius {a:7.3f}: quotient {hardy_rayleigh(power_bump(0j, a, 2.0)):.5f}")
best = minimize_rayleigh()
print(f"minimum {best.value:.5f} at hyperbolic radius {best.radius:.3f} "
      f"({best.evaluations} evaluations)")
