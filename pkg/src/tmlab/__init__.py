"""Numerical verification of sharp exponential and Hardy-type inequalities.

The package checks Trudinger-Moser, Hardy and Beckner-type inequalities on
the Poincare disc and on convex planar domains.  Every check reports a
margin (nonnegative when the inequality holds) together with an error
budget from the underlying quadrature.

Submodules
----------
numerics        adaptive quadrature, root finding and profile helpers
hyperbolic      disc geometry, Mobius and Cayley maps
kernel          the fractional kernel and the hyperbolic heat kernel
rearrangement   distribution functions and decreasing rearrangements
adams           the exponential-integral pipeline on the line
conformal       Riemann maps of convex domains, Schwarz-Christoffel maps
trial           trial functions and their quadrature
functionals     norms, Trudinger-Moser and Beckner functionals
suites, report, cli
                verification suites, report files and the command line
"""

from .errors import ConfigError, TmlabError
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = ["ConfigError", "TmlabError", "VerificationReport", "__version__"]
