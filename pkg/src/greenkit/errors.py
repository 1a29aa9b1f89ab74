"""Exception types raised by greenkit."""


class GreenkitError(Exception):
    """Base class for all numeric and domain errors in the package."""


class ImaginaryRootError(GreenkitError):
    """A carrier lies on the imaginary axis, so no decaying kernel exists."""


class SingularSystemError(GreenkitError):
    pass


class StokesLineError(GreenkitError):
    """The evaluation point lies on a Stokes line Re(alpha z) = 0."""


class ZeroPointError(GreenkitError):
    pass


class ComplexResidueError(GreenkitError):
    """Kernel evaluation left an imaginary part above round-off."""


class QuadratureNonConvergence(GreenkitError):
    pass


class EvaluatorDivergence(GreenkitError):
    pass


class PoleOnPathError(GreenkitError):
    pass


class DomainError(GreenkitError):
    pass


class NonPositiveMetricError(GreenkitError):
    pass
