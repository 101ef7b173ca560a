"""Exception types shared across the package."""


class TmlabError(Exception):
    """Base class for all errors raised by tmlab."""


class NonConvergence(TmlabError):
    """A numerical routine exhausted its budget before meeting its tolerance."""


class TailUnbounded(TmlabError):
    """An integrand exceeded its declared tail envelope at a probe point."""


class NoBracket(TmlabError):
    """The endpoints given to a root finder do not bracket a sign change."""


class NotMonotone(TmlabError):
    """Sampled values of a function expected to be monotone are not."""


class DomainViolation(TmlabError, ValueError):
    """An argument lies outside the domain of the operation."""


class OutsideDomain(DomainViolation):
    """A point is not strictly inside the domain it was checked against."""


class DegenerateInput(TmlabError, ValueError):
    """Inputs collapse a construction (e.g. coincident points)."""


class SubstitutionDisagreement(TmlabError):
    """Two independent quadrature parameterizations disagree beyond budget."""


class OutOfRange(TmlabError, ValueError):
    """A level lies outside the evaluable range of a distribution function."""


class UnsupportedProfile(TmlabError, ValueError):
    """A profile cannot be rearranged (e.g. non-compact without a tail rule)."""


class NotDecreasing(TmlabError, ValueError):
    """A profile required to be non-increasing is not."""


class HypothesisViolated(TmlabError):
    """A kernel fails the structural hypothesis of the exponential-integral lemma."""


class Divergence(TmlabError):
    """The exponent F(t) fails to dominate t beyond the configured horizon."""


class ParameterNonConvergence(TmlabError):
    """The Schwarz-Christoffel parameter problem did not converge."""


class InversionFailure(TmlabError):
    """Newton inversion of a conformal map failed at a point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class OverflowDetected(TmlabError, OverflowError):
    """The exponent of an exponential integrand exceeded the overflow cap."""


class ZeroFunction(TmlabError, ValueError):
    """A Rayleigh quotient was requested for the zero function."""


class ConfigError(TmlabError, ValueError):
    """A configuration document could not be parsed or validated."""
