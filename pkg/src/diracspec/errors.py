"""Exception hierarchy shared by all modules."""


class DiracSpecError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DiracSpecError, ValueError):
    """An argument is outside the range where a formula is defined."""


class BranchCut(DomainError):
    """The spectral point lies on (or too close to) the essential spectrum."""


class PoleAtOne(DomainError):
    """The Moebius inverse was evaluated at its pole w = 1."""


class ConditionViolated(DomainError):
    """A smallness hypothesis of an enclosure theorem does not hold."""


class AnalyticityViolation(DomainError):
    """A dilation angle is outside the sector where the potential is analytic."""


class NumericalFailure(DiracSpecError, RuntimeError):
    """Base for failures of an iterative numerical procedure."""


class NonIntegrable(NumericalFailure):
    """A tail estimate could not be certified below tolerance."""


class WindingUnresolved(NumericalFailure):
    """Argument increments along a contour could not be controlled."""


class NoIntersection(NumericalFailure):
    """A disk boundary and an essential-spectrum curve did not meet exactly once."""
