"""Relative margins of the three Beckner-type variants over random trials."""

import numpy as np

from tmlab.functionals import BECKNER_VARIANTS, beckner_check
from tmlab.trial import random_trial

for v in sorted(BECKNER_VARIANTS):
    res = [beckner_check(random_trial(s), v) for s in range(50)]
    rel = np.array([r.margin / r.rhs for r in res])
    k = int(np.argmin(rel))
    print(f"{v:9s} min relative margin {rel[k]:.4f} (seed {k}), median {np.median(rel):.4f}")
