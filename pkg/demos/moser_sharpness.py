"""Concentrating Moser functions at the critical and a supercritical exponent.

Each Moser function is normalized to unit Hardy-adjusted norm and the
Trudinger-Moser defect integral is printed as the concentration grows.
At 4 pi the values level off; at 4.4 pi they blow up.
"""

import math

import numpy as np

from tmlab.functionals import sharpness_sweep

L = np.linspace(1.0, 40.0, 20)
crit = sharpness_sweep(4 * math.pi, L)
over = sharpness_sweep(4.4 * math.pi, L)

print(f"{'log(R/r)':>9s} {'beta=4pi':>12s} {'beta=4.4pi':>12s}")
for i, c in enumerate(L):
    a = crit.values[i] if i < len(crit.values) else math.nan
    b = over.values[i] if i < len(over.values) else math.nan
    print(f"{c:9.2f} {a:12.5g} {b:12.5g}")
print(f"cap at 4pi: {crit.max_value:.5g}; final value at 4.4pi: {over.final_value:.5g}")
if over.overflow_at is not None:
    print(f"overflow guard hit at log(R/r) = {over.overflow_at}")
